#include "qtsieve/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qtsieve {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

using IPoly = std::vector<long long>;  // ascending integer coefficients

// exact division of integer polynomials (remainder must vanish)
IPoly ipoly_divexact(IPoly num, const IPoly& den) {
    IPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
    while (num.size() >= den.size()) {
        long long lead = num.back();
        long long dl = den.back();
        if (lead % dl != 0) throw std::logic_error("cyclotomic: non-exact division");
        long long c = lead / dl;
        std::size_t shift = num.size() - den.size();
        q[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        while (!num.empty() && num.back() == 0) num.pop_back();
        if (num.empty()) break;
    }
    if (!num.empty()) throw std::logic_error("cyclotomic: nonzero remainder");
    return q;
}

struct Context {
    int m = 1;
    int phi = 1;
    IPoly cyclo;                       // Phi_m, ascending, monic
    std::vector<IPoly> xpow;           // x^j mod Phi_m for j in [0, 2m)
};

const Context& context(int m) {
    static std::map<int, Context> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    if (m < 1 || m > CycValue::kMaxOrder) throw resource_cap_error("cyclotomic order cap exceeded");

    // compute Phi_d for every divisor ascending (including m)
    for (int d = 1; d <= m; ++d) {
        if (m % d != 0 || cache.count(d)) continue;
        IPoly num(d + 1, 0);
        num[0] = -1;
        num[d] = 1;  // x^d - 1
        IPoly phi_d = num;
        for (int e = 1; e < d; ++e) {
            if (d % e != 0) continue;
            phi_d = ipoly_divexact(phi_d, cache.at(e).cyclo);
        }
        Context ctx;
        ctx.m = d;
        ctx.cyclo = phi_d;
        ctx.phi = static_cast<int>(phi_d.size()) - 1;
        ctx.xpow.resize(2 * d);
        IPoly cur{1};
        for (int j = 0; j < 2 * d; ++j) {
            ctx.xpow[j] = cur;
            // multiply by x and reduce
            cur.insert(cur.begin(), 0);
            if (static_cast<int>(cur.size()) - 1 == ctx.phi) {
                long long lead = cur.back();
                for (int i = 0; i <= ctx.phi; ++i) cur[i] -= lead * ctx.cyclo[i];
                cur.pop_back();
            }
            while (!cur.empty() && cur.back() == 0) cur.pop_back();
            if (cur.empty()) cur = {0};
        }
        for (auto& v : ctx.xpow) v.resize(ctx.phi, 0);
        cache.emplace(d, std::move(ctx));
    }
    return cache.at(m);
}

std::vector<long long> reduce_exponent_poly(const std::vector<long long>& counts, const Context& ctx) {
    // counts[k] is the multiplicity of zeta^k, k < 2m allowed
    std::vector<__int128> acc(ctx.phi, 0);
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) continue;
        const IPoly& xp = ctx.xpow[k % (2 * ctx.m)];
        for (int i = 0; i < ctx.phi; ++i) acc[i] += static_cast<__int128>(counts[k]) * xp[i];
    }
    std::vector<long long> out(ctx.phi);
    for (int i = 0; i < ctx.phi; ++i) {
        if (acc[i] > INT64_MAX || acc[i] < INT64_MIN)
            throw std::overflow_error("cyclotomic coefficient overflow");
        out[i] = static_cast<long long>(acc[i]);
    }
    return out;
}

} // namespace

CycValue CycValue::integer(long long v) { return CycValue(1, {v}); }

CycValue CycValue::zero(int m) {
    const Context& ctx = context(m);
    return CycValue(m, std::vector<long long>(ctx.phi, 0));
}

CycValue CycValue::root(int m, long long k) {
    const Context& ctx = context(m);
    long long kk = ((k % m) + m) % m;
    std::vector<long long> c = ctx.xpow[kk];
    return CycValue(m, std::move(c));
}

CycValue CycValue::lifted(int target_order) const {
    if (target_order == order_) return *this;
    if (target_order % order_ != 0) throw std::invalid_argument("CycValue: order does not divide target");
    const Context& ctx = context(target_order);
    const int stride = target_order / order_;
    std::vector<long long> counts(static_cast<std::size_t>(target_order), 0);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) counts[j * stride] = coeffs_[j];
    return CycValue(target_order, reduce_exponent_poly(counts, ctx));
}

CycValue CycValue::operator+(const CycValue& o) const {
    int m = std::lcm(order_, o.order_);
    CycValue a = lifted(m), b = o.lifted(m);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
}

CycValue CycValue::operator-() const {
    CycValue a = *this;
    for (auto& c : a.coeffs_) c = -c;
    return a;
}

CycValue CycValue::operator-(const CycValue& o) const { return *this + (-o); }

CycValue CycValue::operator*(const CycValue& o) const {
    int m = std::lcm(order_, o.order_);
    CycValue a = lifted(m), b = o.lifted(m);
    const Context& ctx = context(m);
    std::vector<__int128> prod(2 * ctx.phi, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            prod[i + j] += static_cast<__int128>(a.coeffs_[i]) * b.coeffs_[j];
    }
    // reduce x^k for k >= phi via the table
    std::vector<__int128> acc(ctx.phi, 0);
    for (std::size_t k = 0; k < prod.size(); ++k) {
        if (prod[k] == 0) continue;
        if (static_cast<int>(k) < ctx.phi) {
            acc[k] += prod[k];
        } else {
            const IPoly& xp = ctx.xpow[k];
            for (int i = 0; i < ctx.phi; ++i) acc[i] += prod[k] * static_cast<__int128>(xp[i]);
        }
    }
    std::vector<long long> out(ctx.phi);
    for (int i = 0; i < ctx.phi; ++i) {
        if (acc[i] > INT64_MAX || acc[i] < INT64_MIN)
            throw std::overflow_error("cyclotomic coefficient overflow");
        out[i] = static_cast<long long>(acc[i]);
    }
    return CycValue(m, std::move(out));
}

CycValue CycValue::conj() const {
    const Context& ctx = context(order_);
    std::vector<long long> counts(static_cast<std::size_t>(order_), 0);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] == 0) continue;
        counts[(order_ - static_cast<long long>(j)) % order_] += coeffs_[j];
    }
    return CycValue(order_, reduce_exponent_poly(counts, ctx));
}

bool CycValue::operator==(const CycValue& o) const {
    int m = std::lcm(order_, o.order_);
    return lifted(m).coeffs_ == o.lifted(m).coeffs_;
}

bool CycValue::is_zero() const {
    for (long long c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycValue::is_integer() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

long long CycValue::as_integer() const {
    if (!is_integer()) throw std::domain_error("CycValue: not a rational integer");
    return coeffs_[0];
}

std::complex<double> CycValue::embed() const {
    std::complex<double> z(0.0, 0.0);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] == 0) continue;
        double ang = kTwoPi * static_cast<double>(j) / order_;
        z += static_cast<double>(coeffs_[j]) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
}

std::string CycValue::str() const {
    std::ostringstream os;
    os << "Z[zeta_" << order_ << "](";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ",";
        os << coeffs_[i];
    }
    os << ")";
    return os.str();
}

CycAccum::CycAccum(int m) : order_(m), counts_(static_cast<std::size_t>(m), 0) {
    context(m);  // validate cap up front
}

void CycAccum::add_root(long long k, long long weight) {
    counts_[((k % order_) + order_) % order_] += weight;
}

CycValue CycAccum::value() const {
    const Context& ctx = context(order_);
    return CycValue(order_, reduce_exponent_poly(counts_, ctx));
}

int euler_phi_int(int m) { return context(m).phi; }

const std::vector<long long>& cyclotomic_polynomial(int m) { return context(m).cyclo; }

} // namespace qtsieve
