#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <utility>

namespace lenskein {

using BigInt = boost::multiprecision::cpp_int;

// Bivariate Laurent polynomial in a and z over the integers, kept as a sorted
// sparse map from (deg_a, deg_z) to a nonzero coefficient.  The empty map is
// zero and equality is map equality, so values double as canonical keys.
class LaurentPoly2 {
public:
    using Exp = std::pair<int, int>;
    using TermMap = std::map<Exp, BigInt>;

    LaurentPoly2() = default;

    static LaurentPoly2 constant(BigInt c);
    static LaurentPoly2 monomial(int deg_a, int deg_z, BigInt coeff = BigInt(1));

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool operator==(const LaurentPoly2& g) const { return terms_ == g.terms_; }
    bool operator!=(const LaurentPoly2& g) const { return terms_ != g.terms_; }

    LaurentPoly2 operator-() const;
    LaurentPoly2& operator+=(const LaurentPoly2& g);
    LaurentPoly2& operator-=(const LaurentPoly2& g);

    friend LaurentPoly2 operator+(LaurentPoly2 f, const LaurentPoly2& g) { return f += g; }
    friend LaurentPoly2 operator-(LaurentPoly2 f, const LaurentPoly2& g) { return f -= g; }
    friend LaurentPoly2 operator*(const LaurentPoly2& f, const LaurentPoly2& g);

    // f * c * a^da * z^dz
    LaurentPoly2 mono_mul(int da, int dz, BigInt coeff = BigInt(1)) const;

    // f * z^-k; total in the Laurent ring for any k.
    LaurentPoly2 div_exact_z(int k) const { return mono_mul(0, -k); }

    // Minimum degree in a over all stored terms.  Throws on the zero polynomial.
    int a_min_degree() const;

    void add_term(int deg_a, int deg_z, const BigInt& coeff);

private:
    TermMap terms_;
};

inline LaurentPoly2 add(const LaurentPoly2& f, const LaurentPoly2& g) { return f + g; }
inline LaurentPoly2 negate(const LaurentPoly2& f) { return -f; }
inline LaurentPoly2 mul(const LaurentPoly2& f, const LaurentPoly2& g) { return f * g; }
inline LaurentPoly2 mono_mul(const LaurentPoly2& f, int da, int dz, BigInt c = BigInt(1)) {
    return f.mono_mul(da, dz, std::move(c));
}
inline LaurentPoly2 div_exact_z(const LaurentPoly2& f, int k) { return f.div_exact_z(k); }
inline int a_min_degree(const LaurentPoly2& f) { return f.a_min_degree(); }

// Canonical text form: terms ascending by (deg_a, deg_z), written as
// "C a^K z^M" with unit parts omitted and +/- separators; "0" for zero.
std::string render(const LaurentPoly2& f);

// Inverse of render; accepts any whitespace-tolerant sum of monomials.
// Throws std::invalid_argument on malformed input.
LaurentPoly2 parse_poly(const std::string& text);

}  // namespace lenskein
