#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "qtsieve/cyclotomic.hpp"
#include "qtsieve/poly.hpp"

namespace qtsieve {

// E(x) = zeta_p^{Tr(x)}, the nontrivial additive character of F_q.
CycValue char_E(const FieldPtr& spec, int x);

// e(g*r/f) = E(a_{-1} of the Laurent expansion of g*r/f at infinity),
// computed as E(coefficient of t^{deg f - 1} in (g*r mod f)).
// f must be monic and nonzero; well-defined in r mod f and g mod f.
CycValue additive_char(const Poly& g, const Poly& r, const Poly& f);

// Exponent k in [0, p) with e(g*r/f) = zeta_p^k.
int additive_char_exponent(const Poly& g, const Poly& r, const Poly& f);

// Multiplicative structure of (F_q[t]/f)^x in invariant-factor form,
// with a discrete-log table over the enumerated unit group.
class UnitGroup {
  public:
    explicit UnitGroup(Poly modulus, std::size_t cap = kDefaultCap);

    const Poly& modulus() const { return modulus_; }
    long long phi() const { return static_cast<long long>(units_.size()); }
    long long exponent() const { return exponent_; }  // lcm of orders (1 if trivial)
    const std::vector<long long>& orders() const { return orders_; }  // d1 >= d2 >= ..., d_{i+1} | d_i
    const std::vector<Poly>& generators() const { return generators_; }
    const std::vector<Poly>& units() const { return units_; }  // ascending code order

    // index of a coprime residue; -1 when gcd(r, f) != 1
    int unit_index(const Poly& r) const;
    const std::vector<long long>& dlog(int unit_idx) const { return dlog_[unit_idx]; }
    int mul(int a, int b) const { return mul_(a, b); }
    int one_index() const { return one_idx_; }

    static constexpr std::size_t kDefaultCap = 10000;

  private:
    Poly modulus_;
    std::vector<Poly> units_;
    std::unordered_map<unsigned long long, int> index_;
    std::vector<Poly> generators_;
    std::vector<long long> orders_;
    std::vector<std::vector<long long>> dlog_;
    long long exponent_ = 1;
    int one_idx_ = 0;

    int mul_(int a, int b) const;
    int pow_(int a, long long e) const;
    void decompose();
};

using UnitGroupPtr = std::shared_ptr<const UnitGroup>;

// A multiplicative character mod f, represented by its exponent vector
// against the group's invariant-factor generators. chi(r) = 0 iff gcd(r,f) != 1.
// Values live in Z[zeta_m], m = group exponent.
class Character {
  public:
    Character(UnitGroupPtr group, std::vector<long long> exponents);

    const Poly& modulus() const { return group_->modulus(); }
    const UnitGroupPtr& group() const { return group_; }
    const std::vector<long long>& exponents() const { return exponents_; }
    bool is_principal() const;
    long long order() const;  // order in the dual group

    CycValue operator()(const Poly& r) const;
    // exponent k with chi(r) = zeta_m^k for coprime r; -1 encodes chi(r) = 0
    long long value_exponent(const Poly& r) const;
    long long value_exponent_unit(int unit_idx) const;

  private:
    UnitGroupPtr group_;
    std::vector<long long> exponents_;
};

// All phi(f) characters mod f; the principal character comes first
// (ascending mixed-radix order of exponent vectors).
std::vector<Character> enumerate_characters(const UnitGroupPtr& group);

// Primitive iff every proper monic divisor d of f admits a distinguishing
// pair r = s mod d, gcd(rs, f) = 1, chi(r) != chi(s).
bool is_primitive(const Character& chi);

// tau(chi) = sum_{r mod f} chi(r) e(r/f), exact in Z[zeta_lcm(m,p)].
CycValue gauss_sum(const Character& chi);

struct OrthogonalityReport {
    Poly modulus;
    long long additive_checks = 0;
    long long multiplicative_checks = 0;
    bool ok = false;
};

// Verifies, exactly:
//   (i)  sum_{r mod f} e(g r / f) = q^{deg f} [f | g]  for all deg g <= 2 deg f
//   (ii) sum_{chi mod f} chi(r) conj(chi(s)) = phi(f) [r = s mod f, (r,f)=1]
// Throws identity_failure with a witness on any violation.
OrthogonalityReport orthogonality_suite(const Poly& f, std::size_t unit_cap = UnitGroup::kDefaultCap);

} // namespace qtsieve
