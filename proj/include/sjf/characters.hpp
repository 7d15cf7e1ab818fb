#pragma once

#include <vector>

#include "sjf/matrix.hpp"

namespace sjf {

// Kronecker symbol (a/n), fully multiplicative extension of Legendre.
int kronecker_symbol(const Int& a, const Int& n);

/// Dirichlet character mod N as an explicit value table on (Z/N)^*.
/// The characters of this artifact are real-valued (trivial or quadratic),
/// so values are stored exactly as integers in {-1, 0, 1}; the generic
/// table constructor accepts any integer-valued completely multiplicative
/// table.
class CharacterModN {
public:
    CharacterModN() : N_(1), values_{1} {}

    static CharacterModN trivial(const Int& N);
    // chi(a) = kronecker(D, a), modulus |D|.
    static CharacterModN kronecker(const Int& D);
    static CharacterModN from_table(const Int& N, std::vector<int> values);

    const Int& modulus() const { return N_; }
    int operator()(const Int& a) const;
    // chi(x) for rational x with numerator and denominator prime to N.
    int eval_rational(const Rational& x) const;

    int sign() const { return (*this)(Int(-1)); }  // chi(-1)
    bool is_trivial() const;

    CharacterModN squared() const;
    CharacterModN times(const CharacterModN& other) const;  // modulus lcm

    // Multiplicativity of the table on (Z/N)^*.
    bool is_multiplicative() const;
    // Parity consistency with a weight: chi(-1) = (-1)^k.
    bool parity_matches(int k) const { return sign() == (k % 2 == 0 ? 1 : -1); }

private:
    Int N_;
    std::vector<int> values_;  // index a in [0, N)
};

// Quadratic character psi_S of F(det(2S)^{1/2})/Q for l odd (resp. the
// (-1)^{l/4}-twisted determinant field for l even): the Kronecker character
// of the fundamental discriminant of the relevant square class.
CharacterModN psi_S_character(const SymMatrix& S);

// Fundamental discriminant of the square class of a nonzero integer.
Int fundamental_discriminant(const Int& d);

std::vector<std::pair<Int, int>> factorize(const Int& n);

}  // namespace sjf
