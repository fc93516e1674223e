#include "qtsieve/characters.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qtsieve {

CycValue char_E(const FieldPtr& spec, int x) {
    return CycValue::root(spec->p(), spec->trace(x));
}

int additive_char_exponent(const Poly& g, const Poly& r, const Poly& f) {
    if (f.is_zero() || !f.is_monic())
        throw std::domain_error("additive_char: modulus must be monic and nonzero");
    if (f.degree() == 0) return 0;  // polynomial argument, a_{-1} = 0
    const auto& spec = f.spec();
    Poly prod = (g * r).mod(f);
    int c = prod.coeff(f.degree() - 1);
    return spec->trace(c);
}

CycValue additive_char(const Poly& g, const Poly& r, const Poly& f) {
    return CycValue::root(f.spec()->p(), additive_char_exponent(g, r, f));
}

UnitGroup::UnitGroup(Poly modulus, std::size_t cap) : modulus_(std::move(modulus)) {
    if (modulus_.is_zero() || !modulus_.is_monic())
        throw std::domain_error("UnitGroup: modulus must be monic and nonzero");
    const auto& spec = modulus_.spec();
    if (modulus_.degree() == 0) {
        // trivial modulus: a single residue class, phi(1) = 1
        units_ = {Poly::zero(spec)};
        index_[0] = 0;
        dlog_ = {{}};
        one_idx_ = 0;
        exponent_ = 1;
        decompose();  // no-op on the trivial group
        return;
    }
    const long long phi_expected = euler_phi(modulus_);
    if (phi_expected > static_cast<long long>(cap))
        throw resource_cap_error("UnitGroup: phi(f) exceeds cap");
    for (const Poly& r : enumerate_polys(spec, modulus_.degree() - 1, EnumMode::AllDegAtMost)) {
        if (r.is_zero()) continue;
        if (gcd(r, modulus_).degree() != 0) continue;
        index_[r.code()] = static_cast<int>(units_.size());
        units_.push_back(r);
    }
    if (static_cast<long long>(units_.size()) != phi_expected)
        throw identity_failure("UnitGroup: unit count disagrees with euler_phi");
    one_idx_ = unit_index(Poly::one(spec));
    decompose();
}

int UnitGroup::unit_index(const Poly& r) const {
    Poly red = modulus_.degree() == 0 ? Poly::zero(modulus_.spec()) : r.mod(modulus_);
    auto it = index_.find(red.code());
    return it == index_.end() ? -1 : it->second;
}

int UnitGroup::mul_(int a, int b) const {
    Poly p = (units_[a] * units_[b]).mod(modulus_);
    return index_.at(p.code());
}

int UnitGroup::pow_(int a, long long e) const {
    int r = one_idx_;
    while (e > 0) {
        if (e & 1) r = mul_(r, a);
        a = mul_(a, a);
        e >>= 1;
    }
    return r;
}

void UnitGroup::decompose() {
    const long long n = phi();
    dlog_.assign(units_.size(), {});
    if (n == 1) {
        generators_.clear();
        orders_.clear();
        exponent_ = 1;
        return;
    }

    // primes of |G|
    std::vector<long long> primes;
    long long m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        primes.push_back(p);
        while (m % p == 0) m /= p;
    }
    if (m > 1) primes.push_back(m);

    // basis per Sylow subgroup, greedy with brute-force adjustment
    struct SylowBasis {
        std::vector<int> gens;
        std::vector<long long> ords;
    };
    std::vector<SylowBasis> sylows;
    for (long long p : primes) {
        long long pk = 1;
        long long rest = n;
        while (rest % p == 0) { rest /= p; pk *= p; }
        // Sylow members: images of x -> x^{n/pk}
        std::vector<int> members;
        std::vector<char> seen(units_.size(), 0);
        for (std::size_t i = 0; i < units_.size(); ++i) {
            int y = pow_(static_cast<int>(i), n / pk);
            if (!seen[y]) { seen[y] = 1; members.push_back(y); }
        }
        SylowBasis basis;
        std::vector<char> in_h(units_.size(), 0);
        std::vector<int> h_elems{one_idx_};
        in_h[one_idx_] = 1;
        while (static_cast<long long>(h_elems.size()) < static_cast<long long>(members.size())) {
            // pick member with maximal coset order
            int best = -1;
            long long best_ord = 0;
            for (int x : members) {
                if (in_h[x]) continue;
                long long ord = 1;
                int y = x;
                while (!in_h[y]) { y = pow_(y, p); ord *= p; }
                if (ord > best_ord) { best_ord = ord; best = x; }
            }
            if (best < 0) throw identity_failure("UnitGroup: Sylow basis search stalled");
            // adjust: find h in H with h^{best_ord} = best^{best_ord}
            int target = pow_(best, best_ord);
            int adj = -1;
            for (int h : h_elems)
                if (pow_(h, best_ord) == target) { adj = h; break; }
            if (adj < 0) throw identity_failure("UnitGroup: basis adjustment failed");
            // gen = best * adj^{-1}; inverse via order
            long long ord_adj = 1;
            {
                int y = adj;
                while (y != one_idx_) { y = mul_(y, adj); ++ord_adj; }
            }
            int gen = mul_(best, pow_(adj, ord_adj - 1));
            basis.gens.push_back(gen);
            basis.ords.push_back(best_ord);
            // extend H
            std::vector<int> new_h;
            for (int h : h_elems) {
                int cur = h;
                for (long long e = 0; e < best_ord; ++e) {
                    if (!in_h[cur]) { in_h[cur] = 1; new_h.push_back(cur); }
                    cur = mul_(cur, gen);
                }
            }
            for (int x : new_h) h_elems.push_back(x);
        }
        sylows.push_back(std::move(basis));
    }

    // merge Sylow bases into invariant factors d1 >= d2 >= ...
    std::size_t k = 0;
    for (const auto& s : sylows) k = std::max(k, s.gens.size());
    generators_.clear();
    orders_.clear();
    for (std::size_t i = 0; i < k; ++i) {
        long long d = 1;
        int g = one_idx_;
        for (const auto& s : sylows) {
            if (i < s.gens.size()) {
                d *= s.ords[i];
                g = mul_(g, s.gens[i]);
            }
        }
        orders_.push_back(d);
        generators_.push_back(units_[g]);
    }
    exponent_ = orders_.empty() ? 1 : orders_[0];

    // discrete-log table by full enumeration; verifies the decomposition
    std::vector<int> genidx(generators_.size());
    for (std::size_t i = 0; i < generators_.size(); ++i) genidx[i] = unit_index(generators_[i]);
    std::vector<char> hit(units_.size(), 0);
    std::vector<long long> expv(generators_.size(), 0);
    long long total = 1;
    for (long long d : orders_) total *= d;
    if (total != n) throw identity_failure("UnitGroup: invariant factors do not multiply to phi");
    int cur = one_idx_;
    for (long long step = 0;; ++step) {
        if (hit[cur]) throw identity_failure("UnitGroup: decomposition is not a bijection");
        hit[cur] = 1;
        dlog_[cur] = expv;
        // mixed-radix increment, updating cur incrementally
        std::size_t i = 0;
        for (; i < expv.size(); ++i) {
            cur = mul_(cur, genidx[i]);
            if (++expv[i] < orders_[i]) break;
            // wrap: cur already multiplied orders_[i] times = identity factor
            expv[i] = 0;
        }
        if (i == expv.size()) break;
    }
    for (std::size_t i = 0; i < units_.size(); ++i)
        if (!hit[i]) throw identity_failure("UnitGroup: decomposition misses a unit");
}

Character::Character(UnitGroupPtr group, std::vector<long long> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
    if (exponents_.size() != group_->orders().size())
        throw std::invalid_argument("Character: exponent vector length mismatch");
    for (std::size_t i = 0; i < exponents_.size(); ++i)
        exponents_[i] = ((exponents_[i] % group_->orders()[i]) + group_->orders()[i]) % group_->orders()[i];
}

bool Character::is_principal() const {
    return std::all_of(exponents_.begin(), exponents_.end(), [](long long c) { return c == 0; });
}

long long Character::order() const {
    long long r = 1;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        long long d = group_->orders()[i];
        long long o = d / std::gcd(d, exponents_[i]);
        r = std::lcm(r, o);
    }
    return r;
}

long long Character::value_exponent_unit(int unit_idx) const {
    const long long m = group_->exponent();
    const auto& a = group_->dlog(unit_idx);
    long long k = 0;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        long long d = group_->orders()[i];
        k = (k + (exponents_[i] * (a[i] % d)) % m * (m / d)) % m;
    }
    return k;
}

long long Character::value_exponent(const Poly& r) const {
    if (group_->modulus().degree() == 0) return 0;  // chi mod 1 is identically 1
    int idx = group_->unit_index(r);
    if (idx < 0) return -1;
    return value_exponent_unit(idx);
}

CycValue Character::operator()(const Poly& r) const {
    long long k = value_exponent(r);
    const int m = static_cast<int>(group_->exponent());
    if (k < 0) return CycValue::zero(m);
    return CycValue::root(m, k);
}

std::vector<Character> enumerate_characters(const UnitGroupPtr& group) {
    std::vector<Character> out;
    const auto& d = group->orders();
    std::vector<long long> c(d.size(), 0);
    long long total = 1;
    for (long long x : d) total *= x;
    out.reserve(total);
    for (;;) {
        out.emplace_back(group, c);
        std::size_t i = 0;
        for (; i < c.size(); ++i) {
            if (++c[i] < d[i]) break;
            c[i] = 0;
        }
        if (i == c.size()) break;
    }
    if (static_cast<long long>(out.size()) != total)
        throw identity_failure("enumerate_characters: wrong count");
    return out;
}

namespace {

std::vector<Poly> proper_monic_divisors(const Poly& f) {
    auto factors = factorize(f);
    std::vector<Poly> divisors{Poly::one(f.spec())};
    for (const auto& [P, mult] : factors) {
        std::vector<Poly> next;
        for (const Poly& d : divisors) {
            Poly cur = d;
            for (int e = 0; e <= mult; ++e) {
                next.push_back(cur);
                if (e < mult) cur = cur * P;
            }
        }
        divisors = std::move(next);
    }
    std::vector<Poly> proper;
    for (const Poly& d : divisors)
        if (d != f.monic()) proper.push_back(d);
    std::sort(proper.begin(), proper.end());
    return proper;
}

} // namespace

bool is_primitive(const Character& chi) {
    const Poly& f = chi.group()->modulus();
    if (f.degree() == 0) return true;  // modulus 1: vacuously primitive
    const auto& units = chi.group()->units();
    for (const Poly& d : proper_monic_divisors(f)) {
        // chi factors through mod d iff chi is constant on residue classes mod d
        bool distinguishes = false;
        std::unordered_map<unsigned long long, long long> class_value;
        for (std::size_t i = 0; i < units.size() && !distinguishes; ++i) {
            unsigned long long key = d.degree() == 0 ? 0 : units[i].mod(d).code();
            long long k = chi.value_exponent_unit(static_cast<int>(i));
            auto [it, inserted] = class_value.emplace(key, k);
            if (!inserted && it->second != k) distinguishes = true;
        }
        if (!distinguishes) return false;  // induced by a character mod d
    }
    return true;
}

CycValue gauss_sum(const Character& chi) {
    const Poly& f = chi.group()->modulus();
    const auto& spec = f.spec();
    const int p = spec->p();
    const long long mg = chi.group()->exponent();
    const int m = static_cast<int>(std::lcm(mg, static_cast<long long>(p)));
    CycAccum acc(m);
    if (f.degree() == 0) {
        // single residue, chi = 1, e(0/1) = 1
        acc.add_root(0);
        return acc.value();
    }
    const auto& units = chi.group()->units();
    const Poly one = Poly::one(spec);
    for (std::size_t i = 0; i < units.size(); ++i) {
        long long kchi = chi.value_exponent_unit(static_cast<int>(i));
        int kadd = additive_char_exponent(one, units[i], f);
        acc.add_root(kchi * (m / mg) + static_cast<long long>(kadd) * (m / p));
    }
    return acc.value();
}

OrthogonalityReport orthogonality_suite(const Poly& f, std::size_t unit_cap) {
    if (f.is_zero() || !f.is_monic())
        throw std::domain_error("orthogonality_suite: modulus must be monic and nonzero");
    const auto& spec = f.spec();
    const int p = spec->p();
    const int d = f.degree();
    OrthogonalityReport report;
    report.modulus = f;

    long long qd = 1;
    for (int i = 0; i < d; ++i) qd *= spec->q();

    // (i) additive: group g by class h = g mod f, verify the class sums,
    // then check every g against its class.
    std::vector<Poly> residues = d == 0 ? std::vector<Poly>{Poly::zero(spec)}
                                        : enumerate_polys(spec, d - 1, EnumMode::AllDegAtMost);
    std::unordered_map<unsigned long long, CycValue> class_sum;
    for (const Poly& h : residues) {
        CycAccum acc(p);
        for (const Poly& r : residues) acc.add_root(additive_char_exponent(h, r, f));
        class_sum.emplace(h.code(), acc.value());
    }
    for (const Poly& g : enumerate_polys(spec, 2 * d, EnumMode::AllDegAtMost)) {
        Poly h = d == 0 ? Poly::zero(spec) : g.mod(f);
        const CycValue& sum = class_sum.at(h.code());
        CycValue expected = h.is_zero() ? CycValue::integer(qd) : CycValue::integer(0);
        if (sum != expected) {
            std::ostringstream os;
            os << "additive orthogonality failed: f=" << f.str() << " g=" << g.str()
               << " sum=" << sum.str();
            throw identity_failure(os.str());
        }
        ++report.additive_checks;
    }

    // (ii) multiplicative: all residue pairs (r, s)
    auto group = std::make_shared<const UnitGroup>(f, unit_cap);
    auto chars = enumerate_characters(group);
    const int m = static_cast<int>(group->exponent());
    const long long phi = group->phi();
    const auto& units = group->units();
    std::vector<std::vector<long long>> kval(chars.size(), std::vector<long long>(units.size()));
    for (std::size_t c = 0; c < chars.size(); ++c)
        for (std::size_t i = 0; i < units.size(); ++i)
            kval[c][i] = chars[c].value_exponent_unit(static_cast<int>(i));
    for (const Poly& r : residues) {
        int ir = group->unit_index(r);
        for (const Poly& s : residues) {
            int is = group->unit_index(s);
            CycValue sum;
            if (ir < 0 || is < 0) {
                sum = CycValue::integer(0);  // every term vanishes
            } else {
                CycAccum acc(m);
                for (std::size_t c = 0; c < chars.size(); ++c) acc.add_root(kval[c][ir] - kval[c][is]);
                sum = acc.value();
            }
            CycValue expected = (ir >= 0 && ir == is) ? CycValue::integer(phi) : CycValue::integer(0);
            if (sum != expected) {
                std::ostringstream os;
                os << "multiplicative orthogonality failed: f=" << f.str() << " r=" << r.str()
                   << " s=" << s.str() << " sum=" << sum.str();
                throw identity_failure(os.str());
            }
            ++report.multiplicative_checks;
        }
    }
    report.ok = true;
    return report;
}

} // namespace qtsieve
