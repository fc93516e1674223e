#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qtsieve/field.hpp"

namespace qtsieve {

// Dense polynomial over F_q, coefficients ascending (element indices).
// The zero polynomial has an empty coefficient vector and degree kNegInf.
// |f|_inf = q^{deg f} for f != 0.
class Poly {
  public:
    static constexpr int kNegInf = std::numeric_limits<int>::min();

    Poly() = default;
    explicit Poly(FieldPtr spec) : spec_(std::move(spec)) {}
    Poly(FieldPtr spec, std::vector<int> coeffs);

    static Poly zero(const FieldPtr& spec) { return Poly(spec); }
    static Poly constant(const FieldPtr& spec, int c);
    static Poly one(const FieldPtr& spec) { return constant(spec, 1); }
    static Poly t(const FieldPtr& spec) { return Poly(spec, {0, 1}); }
    // Polynomial from its integer encoding sum_i idx(c_i) q^i.
    static Poly from_code(const FieldPtr& spec, unsigned long long code);

    const FieldPtr& spec() const { return spec_; }
    const std::vector<int>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return coeffs_.empty() ? kNegInf : static_cast<int>(coeffs_.size()) - 1; }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
    int coeff(int i) const { return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : 0; }
    int leading() const;  // throws on zero polynomial

    unsigned long long code() const;  // encoding; total order key
    std::string str(char var = 't') const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(int c) const;  // c in F_q
    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Poly& o) const { return coeffs_ != o.coeffs_; }
    bool operator<(const Poly& o) const { return code() < o.code(); }

    // (quotient, remainder) with deg r < deg divisor; divisor != 0.
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;
    Poly mod(const Poly& divisor) const { return divmod(divisor).second; }
    bool divides(const Poly& multiple) const { return multiple.mod(*this).is_zero(); }

    Poly monic() const;  // scale by inverse leading coefficient
    Poly derivative() const;
    int eval(int x) const;

    friend Poly gcd(const Poly& a, const Poly& b);  // monic-normalized

  private:
    FieldPtr spec_;
    std::vector<int> coeffs_;

    void trim();
    void check_same_spec(const Poly& o) const;
};

Poly gcd(const Poly& a, const Poly& b);

// Enumeration (deterministic: ascending code order).
enum class EnumMode { MonicExactDegree, AllDegAtMost };
std::vector<Poly> enumerate_polys(const FieldPtr& spec, int d, EnumMode mode,
                                  std::size_t cap = 1u << 22);

bool is_squarefree(const Poly& f);
bool is_irreducible(const Poly& f);  // deg f >= 1 required

// Monic irreducible factors with multiplicities, ascending by code.
std::vector<std::pair<Poly, int>> factorize(const Poly& f);

long long euler_phi(const Poly& f);

// (1/d) sum_{e|d} mu(e) q^{d/e}: number of monic irreducibles of degree d.
long long count_irreducibles(int q, int d);

} // namespace qtsieve
