#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qtsieve/errors.hpp"

namespace qtsieve {

// Exact element of Z[zeta_m]: integer coefficient vector of length phi(m),
// canonically reduced modulo the m-th cyclotomic polynomial. Equality is
// decidable exactly; a complex embedding is available for numeric work.
class CycValue {
  public:
    CycValue() : order_(1), coeffs_{0} {}  // zero of order 1

    static CycValue integer(long long v);
    static CycValue root(int m, long long k);  // zeta_m^k
    static CycValue zero(int m);

    int order() const { return order_; }
    const std::vector<long long>& coeffs() const { return coeffs_; }

    CycValue operator+(const CycValue& o) const;
    CycValue operator-(const CycValue& o) const;
    CycValue operator*(const CycValue& o) const;
    CycValue operator-() const;
    CycValue conj() const;                    // zeta -> zeta^{-1}
    CycValue abs_squared() const { return *this * conj(); }

    bool operator==(const CycValue& o) const;
    bool operator!=(const CycValue& o) const { return !(*this == o); }
    bool is_zero() const;
    bool is_integer() const;                  // canonical coeffs beyond x^0 vanish
    long long as_integer() const;             // throws std::domain_error if not

    CycValue lifted(int target_order) const;  // order must divide target
    std::complex<double> embed() const;
    std::string str() const;

    static constexpr int kMaxOrder = 10000;

  private:
    int order_;
    std::vector<long long> coeffs_;

    CycValue(int m, std::vector<long long> c) : order_(m), coeffs_(std::move(c)) {}
    friend class CycAccum;
};

// Accumulator for large sums of roots of unity of a fixed order:
// integer counters per exponent, reduced once at the end.
class CycAccum {
  public:
    explicit CycAccum(int m);
    int order() const { return order_; }
    void add_root(long long k, long long weight = 1);
    void add_integer(long long v) { add_root(0, v); }
    CycValue value() const;

  private:
    int order_;
    std::vector<long long> counts_;
};

// phi(m) and the integer coefficients of the m-th cyclotomic polynomial
// (exposed mainly for tests).
int euler_phi_int(int m);
const std::vector<long long>& cyclotomic_polynomial(int m);

} // namespace qtsieve
