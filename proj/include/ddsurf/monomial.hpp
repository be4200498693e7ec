#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace ddsurf {

/// The closed variable universe. Exponent vectors are dense and fixed-width.
enum class Var : int { X = 0, Y = 1, Z = 2, T = 3, W = 4, U = 5, V = 6 };

inline constexpr int kNumVars = 7;
inline constexpr std::array<char, kNumVars> kVarNames = {'X', 'Y', 'Z', 'T', 'W', 'U', 'V'};

inline int var_index(Var v) { return static_cast<int>(v); }

using ExpVec = std::array<long, kNumVars>;  // all-zero == the monomial 1

inline ExpVec unit_exp(Var v, long e = 1) {
    ExpVec m{};
    m[var_index(v)] = e;
    return m;
}

/// Lexicographic comparison with the universe order X > Y > Z > T > W > U > V
/// as significance. This is the canonical storage and printing order.
struct LexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        for (int i = 0; i < kNumVars; ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }
};

/// Lexicographic monomial order with a chosen significance permutation.
/// Variables not listed rank after the listed ones, in universe order.
class MonomialOrder {
public:
    static MonomialOrder lex(std::initializer_list<Var> significance) {
        MonomialOrder o;
        std::array<bool, kNumVars> seen{};
        int k = 0;
        for (Var v : significance) {
            o.perm_[k++] = var_index(v);
            seen[var_index(v)] = true;
        }
        for (int i = 0; i < kNumVars; ++i) {
            if (!seen[i]) o.perm_[k++] = i;
        }
        return o;
    }

    static MonomialOrder default_lex() { return lex({}); }

    /// Order used to reduce modulo (P(0,Z), Q(0,Y,Z)): leading terms become
    /// Z^r and Y^s, which are coprime, so division is confluent.
    static MonomialOrder ideal_reduction() { return lex({Var::T, Var::W, Var::Y, Var::Z}); }

    bool less(const ExpVec& a, const ExpVec& b) const {
        for (int i = 0; i < kNumVars; ++i) {
            int j = perm_[i];
            if (a[j] != b[j]) return a[j] < b[j];
        }
        return false;
    }

private:
    std::array<int, kNumVars> perm_{};
};

/// Small set of variables, used to restrict parsing and validate supports.
class VarSet {
public:
    VarSet() = default;
    VarSet(std::initializer_list<Var> vars) {
        for (Var v : vars) bits_ |= 1u << var_index(v);
    }
    static VarSet all() {
        VarSet s;
        s.bits_ = (1u << kNumVars) - 1;
        return s;
    }
    bool contains(Var v) const { return bits_ & (1u << var_index(v)); }
    VarSet with(Var v) const {
        VarSet s = *this;
        s.bits_ |= 1u << var_index(v);
        return s;
    }
    std::vector<Var> to_vector() const {
        std::vector<Var> out;
        for (int i = 0; i < kNumVars; ++i)
            if (bits_ & (1u << i)) out.push_back(static_cast<Var>(i));
        return out;
    }

private:
    std::uint32_t bits_ = 0;
};

}  // namespace ddsurf
