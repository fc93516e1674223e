#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qtsieve/errors.hpp"

namespace qtsieve {

// F_q = F_{p^n} given by a monic irreducible modulus of degree n over Z_p.
// Elements are indices in [0, q); index(x) = sum_i c_i p^i where
// x = c_0 + c_1 u + ... + c_{n-1} u^{n-1}. The constant coordinate is the
// least significant digit, so ascending index order is the documented
// lexicographic element order (constant term compared last):
// F_4 -> [0, 1, u, u+1].
class FieldSpec {
  public:
    // modulus: ascending coefficients over Z_p, length n+1, monic.
    // Validates primality of p and irreducibility of the modulus.
    FieldSpec(int p, int n, std::vector<int> modulus);

    // Built-in modulus for small (p, n); throws if none is on file.
    static std::shared_ptr<const FieldSpec> make(int p, int n);
    static std::shared_ptr<const FieldSpec> make(int p, int n, std::vector<int> modulus);
    // q = p^n with p = smallest prime power decomposition of q.
    static std::shared_ptr<const FieldSpec> make_q(int q);

    int p() const { return p_; }
    int n() const { return n_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int inv(int a) const;                 // throws std::domain_error on 0
    int pow(int a, long long e) const;    // a^e, e may be negative for units
    int trace(int a) const { return trace_[a]; }  // Tr: F_q -> F_p, in [0, p)
    int frobenius(int a) const { return frob_[a]; }

    // Coordinates of an element in the basis 1, u, ..., u^{n-1} (ascending).
    std::vector<int> coords(int a) const;
    int from_coords(const std::vector<int>& c) const;

    // Embeds a scalar residue c in [0, p) as the constant c.
    int from_scalar(int c) const { return ((c % p_) + p_) % p_; }

    // All q elements in index (lexicographic) order, subject to the cap.
    std::vector<int> enumerate(std::size_t cap = kDefaultEnumCap) const;

    std::string element_str(int a) const;  // "u+1" style rendering
    bool same_as(const FieldSpec& o) const {
        return p_ == o.p_ && n_ == o.n_ && modulus_ == o.modulus_;
    }

    static constexpr std::size_t kDefaultEnumCap = 1u << 16;
    static constexpr int kMaxQ = 512;  // table construction cap

  private:
    int p_, n_, q_;
    std::vector<int> modulus_;
    std::vector<int> add_, mul_, neg_, inv_, trace_, frob_;

    void build_tables();
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

} // namespace qtsieve
