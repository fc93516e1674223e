#include "qtsieve/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qtsieve {

Poly::Poly(FieldPtr spec, std::vector<int> coeffs) : spec_(std::move(spec)), coeffs_(std::move(coeffs)) {
    for (int& c : coeffs_) {
        if (c < 0 || c >= spec_->q()) throw std::invalid_argument("Poly: coefficient out of range");
    }
    trim();
}

Poly Poly::constant(const FieldPtr& spec, int c) {
    Poly f(spec);
    if (c != 0) f.coeffs_ = {c};
    return f;
}

Poly Poly::from_code(const FieldPtr& spec, unsigned long long code) {
    Poly f(spec);
    const unsigned long long q = spec->q();
    while (code > 0) {
        f.coeffs_.push_back(static_cast<int>(code % q));
        code /= q;
    }
    return f;
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void Poly::check_same_spec(const Poly& o) const {
    if (!spec_ || !o.spec_ || !spec_->same_as(*o.spec_))
        throw std::invalid_argument("Poly: mismatched field specs");
}

int Poly::leading() const {
    if (coeffs_.empty()) throw std::domain_error("Poly: zero polynomial has no leading coefficient");
    return coeffs_.back();
}

unsigned long long Poly::code() const {
    unsigned long long c = 0;
    const unsigned long long q = spec_ ? spec_->q() : 2;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) c = c * q + static_cast<unsigned long long>(*it);
    return c;
}

std::string Poly::str(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const bool ext = spec_->n() > 1;
    for (int i = degree(); i >= 0; --i) {
        int c = coeffs_[i];
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        std::string cs = spec_->element_str(c);
        if (i == 0) { os << cs; continue; }
        if (c != 1) {
            if (ext && cs.find('+') != std::string::npos) os << "(" << cs << ")*";
            else os << cs << "*";
        }
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

Poly Poly::operator+(const Poly& o) const {
    check_same_spec(o);
    Poly r(spec_);
    r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
        r.coeffs_[i] = spec_->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r(spec_);
    r.coeffs_ = coeffs_;
    for (int& c : r.coeffs_) c = spec_->neg(c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    check_same_spec(o);
    Poly r(spec_);
    if (is_zero() || o.is_zero()) return r;
    r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            r.coeffs_[i + j] = spec_->add(r.coeffs_[i + j], spec_->mul(coeffs_[i], o.coeffs_[j]));
    }
    r.trim();
    return r;
}

Poly Poly::scaled(int c) const {
    Poly r(spec_);
    if (c == 0 || is_zero()) return r;
    r.coeffs_ = coeffs_;
    for (int& x : r.coeffs_) x = spec_->mul(x, c);
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
    check_same_spec(divisor);
    if (divisor.is_zero()) throw std::domain_error("Poly: division by zero");
    Poly q(spec_), r = *this;
    const int dd = divisor.degree();
    const int ilead = spec_->inv(divisor.leading());
    if (degree() >= dd) q.coeffs_.assign(degree() - dd + 1, 0);
    while (!r.is_zero() && r.degree() >= dd) {
        int shift = r.degree() - dd;
        int factor = spec_->mul(r.leading(), ilead);
        q.coeffs_[shift] = factor;
        for (int i = 0; i <= dd; ++i) {
            int delta = spec_->mul(factor, divisor.coeff(i));
            r.coeffs_[shift + i] = spec_->sub(r.coeffs_[shift + i], delta);
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

Poly Poly::monic() const {
    if (is_zero()) throw std::domain_error("Poly: cannot normalize zero");
    return scaled(spec_->inv(leading()));
}

Poly Poly::derivative() const {
    Poly r(spec_);
    if (degree() < 1) return r;
    r.coeffs_.assign(coeffs_.size() - 1, 0);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        int scalar = spec_->from_scalar(static_cast<int>(k % spec_->p()));
        r.coeffs_[k - 1] = spec_->mul(coeffs_[k], scalar);
    }
    r.trim();
    return r;
}

int Poly::eval(int x) const {
    int acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = spec_->add(spec_->mul(acc, x), *it);
    return acc;
}

Poly gcd(const Poly& a, const Poly& b) {
    a.check_same_spec(b);
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0,0) undefined");
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x.mod(y);
        x = y;
        y = r;
    }
    return x.monic();
}

std::vector<Poly> enumerate_polys(const FieldPtr& spec, int d, EnumMode mode, std::size_t cap) {
    const unsigned long long q = spec->q();
    std::vector<Poly> out;
    if (mode == EnumMode::MonicExactDegree) {
        if (d < 0) throw std::invalid_argument("enumerate_polys: negative degree");
        unsigned long long count = 1;
        for (int i = 0; i < d; ++i) {
            count *= q;
            if (count > cap) throw resource_cap_error("enumerate_polys: cap exceeded");
        }
        out.reserve(count);
        for (unsigned long long low = 0; low < count; ++low) {
            Poly f = Poly::from_code(spec, low);
            std::vector<int> c = f.coeffs();
            c.resize(d + 1, 0);
            c[d] = 1;
            out.emplace_back(spec, std::move(c));
        }
    } else {
        if (d < 0) throw std::invalid_argument("enumerate_polys: negative bound");
        unsigned long long count = 1;
        for (int i = 0; i <= d; ++i) {
            count *= q;
            if (count > cap) throw resource_cap_error("enumerate_polys: cap exceeded");
        }
        out.reserve(count);
        for (unsigned long long code = 0; code < count; ++code) out.push_back(Poly::from_code(spec, code));
    }
    return out;
}

bool is_squarefree(const Poly& f) {
    if (f.is_zero()) return false;          // every P^2 divides 0
    if (f.degree() == 0) return true;       // nonzero constants
    Poly d = f.derivative();
    if (d.is_zero()) return false;          // p-th power (F_q perfect)
    return gcd(f, d).degree() == 0;
}

bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) throw std::domain_error("is_irreducible: constant input");
    const auto& spec = f.spec();
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        for (const Poly& g : enumerate_polys(spec, d, EnumMode::MonicExactDegree))
            if (g.divides(f)) return false;
    }
    return true;
}

std::vector<std::pair<Poly, int>> factorize(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("factorize: zero input");
    std::vector<std::pair<Poly, int>> out;
    Poly rest = f.monic();
    const auto& spec = f.spec();
    int d = 1;
    while (rest.degree() >= 1) {
        if (2 * d > rest.degree()) {
            out.emplace_back(rest, 1);  // remaining factor is irreducible
            break;
        }
        for (const Poly& g : enumerate_polys(spec, d, EnumMode::MonicExactDegree)) {
            if (!g.divides(rest)) continue;
            int mult = 0;
            while (g.divides(rest)) {
                rest = rest.divmod(g).first;
                ++mult;
            }
            out.emplace_back(g, mult);
            if (rest.degree() < 1) break;
        }
        ++d;
    }
    return out;
}

long long euler_phi(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("euler_phi: zero input");
    long long phi = 1;
    const long long q = f.spec()->q();
    for (const auto& [P, k] : factorize(f)) {
        long long qd = 1;
        for (int i = 0; i < P.degree(); ++i) qd *= q;
        long long qkd = 1;
        for (int i = 0; i < k - 1; ++i) qkd *= qd;
        phi *= qkd * (qd - 1);
    }
    return phi;
}

long long count_irreducibles(int q, int d) {
    if (d < 1) throw std::invalid_argument("count_irreducibles: d >= 1 required");
    auto mu = [](int m) {
        int result = 1;
        for (int p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            m /= p;
            if (m % p == 0) return 0;
            result = -result;
        }
        if (m > 1) result = -result;
        return result;
    };
    long long total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        long long qpow = 1;
        for (int i = 0; i < d / e; ++i) qpow *= q;
        total += mu(e) * qpow;
    }
    return total / d;
}

} // namespace qtsieve
