#include "qtsieve/field.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qtsieve {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Minimal Z_p[x] helpers used only for modulus validation and table building.
using ZpPoly = std::vector<int>;  // ascending, may carry trailing zeros

ZpPoly trim(ZpPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, int p) {
    if (a.empty() || b.empty()) return {};
    ZpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return trim(c);
}

ZpPoly zp_mod(ZpPoly a, const ZpPoly& m, int p) {
    a = trim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    // m is monic
    while (static_cast<int>(a.size()) - 1 >= dm) {
        int shift = static_cast<int>(a.size()) - 1 - dm;
        int lead = a.back();
        for (int i = 0; i <= dm; ++i) {
            int& t = a[shift + i];
            t = ((t - lead * m[i]) % p + p) % p;
        }
        a = trim(a);
        if (a.empty()) break;
    }
    return a;
}

bool zp_irreducible(const ZpPoly& m, int p) {
    const int n = static_cast<int>(m.size()) - 1;
    if (n < 1) return false;
    if (n == 1) return true;
    // trial division by all monic polynomials of degree 1..n/2
    for (int d = 1; 2 * d <= n; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long code = 0; code < count; ++code) {
            ZpPoly div(d + 1, 0);
            long long c = code;
            for (int i = 0; i < d; ++i) {
                div[i] = static_cast<int>(c % p);
                c /= p;
            }
            div[d] = 1;
            if (zp_mod(m, div, p).empty()) return false;
        }
    }
    return true;
}

const std::map<std::pair<int, int>, std::vector<int>>& builtin_moduli() {
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{2, 1}, {0, 1}},           // u
        {{2, 2}, {1, 1, 1}},        // u^2+u+1
        {{2, 3}, {1, 1, 0, 1}},     // u^3+u+1
        {{2, 4}, {1, 1, 0, 0, 1}},  // u^4+u+1
        {{3, 1}, {0, 1}},
        {{3, 2}, {1, 0, 1}},        // u^2+1
        {{3, 3}, {1, 2, 0, 1}},     // u^3+2u+1
        {{5, 1}, {0, 1}},
        {{5, 2}, {1, 1, 1}},        // u^2+u+1
        {{7, 1}, {0, 1}},
    };
    return table;
}

} // namespace

FieldSpec::FieldSpec(int p, int n, std::vector<int> modulus) : p_(p), n_(n), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw std::invalid_argument("FieldSpec: p must be prime");
    if (n_ < 1) throw std::invalid_argument("FieldSpec: n must be positive");
    long long q = 1;
    for (int i = 0; i < n_; ++i) {
        q *= p_;
        if (q > kMaxQ) throw resource_cap_error("FieldSpec: q exceeds table cap");
    }
    q_ = static_cast<int>(q);
    if (static_cast<int>(modulus_.size()) != n_ + 1)
        throw std::invalid_argument("FieldSpec: modulus must have degree n");
    for (int& c : modulus_) c = ((c % p_) + p_) % p_;
    if (modulus_.back() != 1) throw std::invalid_argument("FieldSpec: modulus must be monic");
    if (!zp_irreducible(modulus_, p_))
        throw std::invalid_argument("FieldSpec: modulus is reducible over Z_p");
    build_tables();
}

std::shared_ptr<const FieldSpec> FieldSpec::make(int p, int n) {
    auto it = builtin_moduli().find({p, n});
    if (it == builtin_moduli().end())
        throw std::invalid_argument("FieldSpec: no built-in modulus for p^n; supply one");
    return std::make_shared<const FieldSpec>(p, n, it->second);
}

std::shared_ptr<const FieldSpec> FieldSpec::make(int p, int n, std::vector<int> modulus) {
    return std::make_shared<const FieldSpec>(p, n, std::move(modulus));
}

std::shared_ptr<const FieldSpec> FieldSpec::make_q(int q) {
    if (q < 2) throw std::invalid_argument("FieldSpec: q must be a prime power >= 2");
    int p = 0;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    if (p == 0) p = q;  // q prime
    int n = 0;
    int m = q;
    while (m > 1) {
        if (m % p != 0) throw std::invalid_argument("FieldSpec: q is not a prime power");
        m /= p;
        ++n;
    }
    return make(p, n);
}

void FieldSpec::build_tables() {
    add_.assign(static_cast<std::size_t>(q_) * q_, 0);
    mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    trace_.assign(q_, 0);
    frob_.assign(q_, 0);

    auto digits = [&](int a) {
        ZpPoly d(n_, 0);
        for (int i = 0; i < n_; ++i) { d[i] = a % p_; a /= p_; }
        return d;
    };
    auto index_full = [&](ZpPoly d) {
        d.resize(n_, 0);
        int a = 0;
        for (int i = n_ - 1; i >= 0; --i) a = a * p_ + d[i];
        return a;
    };

    for (int a = 0; a < q_; ++a) {
        ZpPoly da = digits(a);
        ZpPoly na(n_, 0);
        for (int i = 0; i < n_; ++i) na[i] = (p_ - da[i]) % p_;
        neg_[a] = index_full(na);
        for (int b = 0; b < q_; ++b) {
            ZpPoly db = digits(b);
            ZpPoly s(n_, 0);
            for (int i = 0; i < n_; ++i) s[i] = (da[i] + db[i]) % p_;
            add_[static_cast<std::size_t>(a) * q_ + b] = index_full(s);
            mul_[static_cast<std::size_t>(a) * q_ + b] = index_full(zp_mod(zp_mul(trim(da), trim(db), p_), modulus_, p_));
        }
    }
    // Frobenius x -> x^p via the mul table, then trace as the Frobenius orbit sum.
    for (int a = 0; a < q_; ++a) {
        int x = a;
        for (int e = 1; e < p_; ++e) x = mul(x, a);
        frob_[a] = x;
    }
    for (int a = 0; a < q_; ++a) {
        int acc = 0, x = a;
        for (int i = 0; i < n_; ++i) {
            acc = add(acc, x);
            x = frob_[x];
        }
        // acc lies in the prime field: its coordinates are (c, 0, ..., 0)
        trace_[a] = acc % p_;
    }
    for (int a = 1; a < q_; ++a) {
        for (int b = 1; b < q_; ++b)
            if (mul(a, b) == 1) { inv_[a] = b; break; }
    }
}

int FieldSpec::inv(int a) const {
    if (a == 0) throw std::domain_error("FieldSpec: inversion of zero");
    return inv_[a];
}

int FieldSpec::pow(int a, long long e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    int r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::vector<int> FieldSpec::coords(int a) const {
    std::vector<int> c(n_, 0);
    for (int i = 0; i < n_; ++i) { c[i] = a % p_; a /= p_; }
    return c;
}

int FieldSpec::from_coords(const std::vector<int>& c) const {
    if (static_cast<int>(c.size()) > n_)
        throw std::invalid_argument("FieldSpec: coordinate vector too long");
    int a = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        int r = ((c[i] % p_) + p_) % p_;
        a = a * p_ + r;
    }
    return a;
}

std::vector<int> FieldSpec::enumerate(std::size_t cap) const {
    if (static_cast<std::size_t>(q_) > cap)
        throw resource_cap_error("FieldSpec: enumeration cap exceeded");
    std::vector<int> all(q_);
    for (int i = 0; i < q_; ++i) all[i] = i;
    return all;
}

std::string FieldSpec::element_str(int a) const {
    if (n_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    std::ostringstream os;
    auto c = coords(a);
    bool first = true;
    for (int i = n_ - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) { os << c[i]; continue; }
        if (c[i] != 1) os << c[i] << "*";
        os << "u";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

} // namespace qtsieve
