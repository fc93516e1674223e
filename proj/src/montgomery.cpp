#include "qtsieve/montgomery.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qtsieve/errors.hpp"

namespace qtsieve {

long long SieveProblem::q_pow(int e) const {
    long long v = 1;
    for (int i = 0; i < e; ++i) v *= spec->q();
    return v;
}

void SieveProblem::validate() const {
    if (!(Q < N) || Q < 1) throw std::invalid_argument("SieveProblem: need 1 <= Q < N");
    for (const Poly& f : big_n) {
        if (!f.is_monic() || f.degree() <= Q || f.degree() > N)
            throw std::invalid_argument("SieveProblem: window element out of range");
    }
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const Poly& P = primes[i];
        if (!P.is_monic() || P.degree() < 1 || P.degree() > Q)
            throw std::invalid_argument("SieveProblem: prime out of range");
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            if (gcd(P, primes[j]).degree() != 0)
                throw std::invalid_argument("SieveProblem: moduli not pairwise coprime");
        auto it = omega.find(P.code());
        if (it == omega.end()) continue;
        std::set<unsigned long long> seen;
        for (const Poly& r : it->second) {
            if (r.degree() >= P.degree()) throw std::invalid_argument("SieveProblem: omega residue not reduced");
            if (!seen.insert(r.code()).second)
                throw std::invalid_argument("SieveProblem: omega residues not distinct");
        }
    }
    for (const auto& [code, residues] : omega) {
        bool known = false;
        for (const Poly& P : primes)
            if (P.code() == code) known = true;
        if (!known) throw std::invalid_argument("SieveProblem: omega keyed by unknown modulus");
        (void)residues;
    }
}

long long SieveProblem::w(const Poly& P) const {
    auto it = omega.find(P.code());
    return it == omega.end() ? 0 : static_cast<long long>(it->second.size());
}

std::vector<Poly> SieveProblem::full_window(const FieldPtr& spec, int N, int Q) {
    std::vector<Poly> out;
    for (int d = Q + 1; d <= N; ++d)
        for (const Poly& f : enumerate_polys(spec, d, EnumMode::MonicExactDegree)) out.push_back(f);
    return out;
}

std::vector<Poly> survivors(const SieveProblem& prob) {
    std::vector<Poly> out;
    for (const Poly& f : prob.big_n) {
        bool ok = true;
        for (const Poly& P : prob.primes) {
            auto it = prob.omega.find(P.code());
            if (it == prob.omega.end()) continue;
            Poly res = f.mod(P);
            for (const Poly& bad : it->second)
                if (res == bad) { ok = false; break; }
            if (!ok) break;
        }
        if (ok) out.push_back(f);
    }
    return out;
}

KappaWeights kappa_set(const FieldPtr& spec, const std::vector<Poly>& primes, int Q,
                       std::size_t subset_cap) {
    if (primes.size() > subset_cap) throw resource_cap_error("kappa_set: too many primes");
    KappaWeights kw;
    const std::size_t n = primes.size();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        Poly prod = Poly::one(spec);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ull << i)) prod = prod * primes[i];
        kw.kappa.push_back(prod);
    }
    std::sort(kw.kappa.begin(), kw.kappa.end());
    kw.a_kappa_q = static_cast<long long>(
        std::count_if(kw.kappa.begin(), kw.kappa.end(), [&](const Poly& k) { return k.degree() <= Q; }));
    return kw;
}

namespace {

bool in_kappa(const Poly& R, const SieveProblem& prob, std::vector<Poly>* parts = nullptr) {
    // R is a product of distinct primes iff dividing out each prime that
    // divides R exactly once reconstructs R
    Poly rest = R.monic();
    for (const Poly& P : prob.primes) {
        if (P.divides(rest)) {
            rest = rest.divmod(P).first;
            if (parts) parts->push_back(P);
            if (P.divides(rest)) return false;  // repeated factor
        }
    }
    return rest.is_one();
}

} // namespace

Rat g_weight(const Poly& R, const SieveProblem& prob) {
    if (!R.is_monic()) throw std::invalid_argument("g_weight: R must be monic");
    std::vector<Poly> parts;
    if (!in_kappa(R, prob, &parts)) return Rat(0);
    Rat g(1);
    for (const Poly& P : parts) {
        long long w = prob.w(P);
        long long qd = prob.q_pow(P.degree());
        if (w == qd) throw std::domain_error("g_weight: w(P) = q^{deg P}, denominator zero");
        g = g * Rat(w, qd - w);
    }
    return g;
}

MontgomeryReport montgomery_bound(const SieveProblem& prob, bool check_verified_regime,
                                  const OperatorNormOptions& opts) {
    prob.validate();
    MontgomeryReport rep;
    auto kw = kappa_set(prob.spec, prob.primes, prob.Q);
    rep.a_kappa_q = kw.a_kappa_q;

    long long two_Q = 1;
    for (int i = 0; i < prob.Q; ++i) two_Q *= 2;
    rep.numerator = Rat(prob.q_pow(prob.N + 1)) + Rat(rep.a_kappa_q) * Rat(two_Q) * Rat(prob.q_pow(prob.Q - 1));

    Rat denom(0);
    std::vector<Poly> T;
    for (const Poly& k : kw.kappa)
        if (k.degree() <= prob.Q) {
            Rat g = g_weight(k, prob);
            denom = denom + g;
            T.push_back(k);
            rep.weights.emplace_back(k, g);
        }
    if (denom.num == 0) throw std::domain_error("montgomery_bound: zero denominator");
    rep.denominator = denom;
    rep.bound = rep.numerator / rep.denominator;

    auto surv = survivors(prob);
    rep.survivor_count = static_cast<long long>(surv.size());
    rep.count_within_bound = Rat(rep.survivor_count) <= rep.bound;

    bool any_weight = false;
    for (const Poly& P : prob.primes)
        if (prob.w(P) > 0) any_weight = true;
    rep.no_sieve_information = prob.primes.empty() || !any_weight;

    // divisor moduli D != 1 dividing some R in T
    std::set<Poly> divisors;
    for (const Poly& R : T) {
        if (R.is_one()) continue;
        std::vector<Poly> divs{Poly::one(R.spec())};
        for (const auto& [P, mult] : factorize(R)) {
            std::vector<Poly> next;
            for (const Poly& d : divs) {
                Poly cur = d;
                for (int e = 0; e <= mult; ++e) {
                    next.push_back(cur);
                    if (e < mult) cur = cur * P;
                }
            }
            divs = std::move(next);
        }
        for (const Poly& d : divs)
            if (!d.is_one()) divisors.insert(d);
    }
    rep.divisor_moduli.assign(divisors.begin(), divisors.end());

    if (check_verified_regime && !rep.divisor_moduli.empty()) {
        double q = prob.spec->q();
        double qN1 = std::pow(q, prob.N + 1);
        double qQm1 = std::pow(q, prob.Q - 1);
        // bare divisor set
        auto bare = operator_norm(prob.spec, prob.N, rep.divisor_moduli, opts);
        rep.bare_lambda = bare.lambda();
        rep.bare_constant = qN1 + static_cast<double>(rep.divisor_moduli.size()) * qQm1;
        // with the trivial modulus, which the bound derivation needs
        std::vector<Poly> with_one{Poly::one(prob.spec)};
        for (const Poly& d : rep.divisor_moduli) with_one.push_back(d);
        auto full = operator_norm(prob.spec, prob.N, with_one, opts);
        rep.verified_lambda = full.lambda();
        rep.verified_constant = qN1 + static_cast<double>(with_one.size()) * qQm1;
        const double tol = 1e-9;
        bool bare_ok = rep.bare_lambda <= rep.bare_constant * (1.0 + tol) + tol;
        bool full_ok = rep.verified_lambda <= rep.verified_constant * (1.0 + tol) + tol;
        rep.bound_verified_regime = bare_ok && full_ok;
    }
    return rep;
}

long long CoeffVec::dim() const {
    long long d = 1;
    for (int i = 0; i <= N; ++i) d *= spec->q();
    return d;
}

CoeffVec CoeffVec::zero(const FieldPtr& spec, int N) {
    CoeffVec c{spec, N, {}};
    c.a.assign(c.dim(), 0);
    return c;
}

CoeffVec CoeffVec::indicator(const FieldPtr& spec, int N, const std::vector<Poly>& support) {
    CoeffVec c = zero(spec, N);
    for (const Poly& f : support) {
        if (f.degree() > N) throw std::invalid_argument("CoeffVec: support element beyond N");
        c.a[f.code()] = 1;
    }
    return c;
}

CycValue s_value(const CoeffVec& coeffs, const Poly& r, const Poly& R) {
    CycAccum acc(coeffs.spec->p());
    auto gs = enumerate_polys(coeffs.spec, coeffs.N, EnumMode::AllDegAtMost);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (coeffs.a[i] == 0) continue;
        acc.add_root(additive_char_exponent(gs[i], r, R), coeffs.a[i]);
    }
    return acc.value();
}

ClassSumTrace class_sums(const CoeffVec& coeffs, const Poly& R) {
    ClassSumTrace tr;
    tr.modulus = R;
    auto gs = enumerate_polys(coeffs.spec, coeffs.N, EnumMode::AllDegAtMost);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        tr.z_total += coeffs.a[i];
        Poly h = R.degree() == 0 ? Poly::zero(coeffs.spec) : gs[i].mod(R);
        tr.z_classes[h.code()] += coeffs.a[i];
    }
    // make sure every class appears, including empty ones
    if (R.degree() > 0)
        for (const Poly& h : enumerate_polys(coeffs.spec, R.degree() - 1, EnumMode::AllDegAtMost))
            tr.z_classes.emplace(h.code(), 0);
    else
        tr.z_classes.emplace(0, tr.z_total);
    return tr;
}

long long w_prime(const CoeffVec& coeffs, const Poly& P) {
    // a class counts only if every a_g on it vanishes; Z(P,h) = 0 is not
    // sufficient (cancellation)
    auto tr = class_sums(coeffs, P);
    std::map<unsigned long long, bool> empty;
    for (const auto& [h, z] : tr.z_classes) {
        (void)z;
        empty[h] = true;
    }
    auto gs = enumerate_polys(coeffs.spec, coeffs.N, EnumMode::AllDegAtMost);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (coeffs.a[i] == 0) continue;
        Poly hh = P.degree() == 0 ? Poly::zero(coeffs.spec) : gs[i].mod(P);
        empty[hh.code()] = false;
    }
    long long count = 0;
    for (const auto& [h, e] : empty) {
        (void)h;
        if (e) ++count;
    }
    return count;
}

Rat g_prime_weight(const Poly& R, const SieveProblem& prob, const CoeffVec& coeffs) {
    if (!R.is_monic()) throw std::invalid_argument("g_prime_weight: R must be monic");
    std::vector<Poly> parts;
    if (!in_kappa(R, prob, &parts)) return Rat(0);
    Rat g(1);
    for (const Poly& P : parts) {
        long long w = prob.w(P);
        long long qd = prob.q_pow(P.degree());
        if (w == qd) throw std::domain_error("g_prime_weight: w(P) = q^{deg P}");
        g = g * Rat(w_prime(coeffs, P), qd - w);
    }
    return g;
}

namespace {

long long exact_norm_integer(const CycValue& v, const char* where) {
    CycValue n = v.abs_squared();
    if (!n.is_integer()) throw identity_failure(std::string(where) + ": |S|^2 not a rational integer");
    return n.as_integer();
}

// residues r mod R admissible for the weight inequality: P does not divide r for every
// prime P | R from the problem's set
std::vector<Poly> admissible_residues(const Poly& R, const SieveProblem& prob) {
    const auto& spec = R.spec();
    std::vector<Poly> out;
    if (R.degree() == 0) {
        out.push_back(Poly::zero(spec));
        return out;
    }
    std::vector<Poly> divs;
    for (const Poly& P : prob.primes)
        if (P.divides(R)) divs.push_back(P);
    for (const Poly& r : enumerate_polys(spec, R.degree() - 1, EnumMode::AllDegAtMost)) {
        bool ok = true;
        for (const Poly& P : divs)
            if (r.mod(P).is_zero()) { ok = false; break; }
        if (ok) out.push_back(r);
    }
    return out;
}

} // namespace

ResidueIdentityReport residue_identity_check(const CoeffVec& coeffs, const Poly& R, const SieveProblem& prob) {
    ResidueIdentityReport rep;
    const auto& spec = coeffs.spec;

    // (i) and (ii) for every prime in the problem
    for (const Poly& P : prob.primes) {
        ClassSumTrace tr = class_sums(coeffs, P);
        long long qd = prob.q_pow(P.degree());
        long long rhs = 0;
        for (const auto& [h, z] : tr.z_classes) {
            (void)h;
            rhs += z * z;
        }
        rhs *= qd;
        long long lhs_full = 0, lhs_punct = 0;
        for (const Poly& r : enumerate_polys(spec, P.degree() - 1, EnumMode::AllDegAtMost)) {
            long long n = exact_norm_integer(s_value(coeffs, r, P), "residue_identity_check");
            lhs_full += n;
            if (!r.is_zero()) lhs_punct += n;
        }
        if (lhs_full != rhs) {
            std::ostringstream os;
            os << "residue_identity_check identity (i) failed at P=" << P.str() << ": " << lhs_full
               << " vs " << rhs;
            throw identity_failure(os.str());
        }
        if (lhs_punct != rhs - tr.z_total * tr.z_total) {
            std::ostringstream os;
            os << "residue_identity_check identity (ii) failed at P=" << P.str();
            throw identity_failure(os.str());
        }
        rep.traces.push_back(std::move(tr));
    }
    rep.parseval_full = true;
    rep.parseval_punctured = true;

    // (iii) the weight inequality for the given R
    ClassSumTrace trR = class_sums(coeffs, R);
    rep.z_squared = trR.z_total * trR.z_total;
    rep.gprime_R = g_prime_weight(R, prob, coeffs);
    long long admissible_sum = 0;
    for (const Poly& r : admissible_residues(R, prob))
        admissible_sum += exact_norm_integer(s_value(coeffs, r, R), "residue_identity_check");
    rep.admissible_sum = admissible_sum;
    rep.weight_inequality_holds = rep.gprime_R * Rat(rep.z_squared) <= Rat(admissible_sum);
    if (!rep.weight_inequality_holds) {
        std::ostringstream os;
        os << "residue_identity_check weight inequality failed at R=" << R.str() << ": g'(R)=" << rep.gprime_R.str()
           << " |Z|^2=" << rep.z_squared << " admissible sum=" << admissible_sum;
        throw identity_failure(os.str());
    }
    return rep;
}

SummedWeightReport summed_weight_check(const CoeffVec& coeffs, const SieveProblem& prob) {
    SummedWeightReport rep;
    rep.degenerate_no_primes = prob.primes.empty();
    auto kw = kappa_set(prob.spec, prob.primes, prob.Q);
    std::vector<Poly> T;
    for (const Poly& k : kw.kappa)
        if (k.degree() <= prob.Q) T.push_back(k);

    Rat gsum(0);
    for (const Poly& R : T) gsum = gsum + g_prime_weight(R, prob, coeffs);
    rep.gprime_sum = gsum;

    ClassSumTrace tr = class_sums(coeffs, Poly::one(coeffs.spec));
    rep.z_squared = tr.z_total * tr.z_total;

    long long mid = 0;
    for (const Poly& R : T)
        for (const Poly& r : admissible_residues(R, prob))
            mid += exact_norm_integer(s_value(coeffs, r, R), "summed_weight_check");
    rep.summed_rhs = mid;

    // divisor moduli
    std::set<Poly> divisors;
    for (const Poly& R : T) {
        if (R.is_one()) continue;
        std::vector<Poly> divs{Poly::one(R.spec())};
        for (const auto& [P, mult] : factorize(R)) {
            std::vector<Poly> next;
            for (const Poly& d : divs) {
                Poly cur = d;
                for (int e = 0; e <= mult; ++e) {
                    next.push_back(cur);
                    if (e < mult) cur = cur * P;
                }
            }
            divs = std::move(next);
        }
        for (const Poly& d : divs)
            if (!d.is_one()) divisors.insert(d);
    }
    long long dsum = 0;
    for (const Poly& D : divisors) {
        for (const Poly& s : enumerate_polys(coeffs.spec, D.degree() - 1, EnumMode::AllDegAtMost)) {
            if (s.is_zero() || gcd(s, D).degree() != 0) continue;
            dsum += exact_norm_integer(s_value(coeffs, s, D), "summed_weight_check");
        }
    }
    rep.divisor_sum = dsum;
    rep.divisor_count = static_cast<long long>(divisors.size());
    long long two_Q = 1;
    for (int i = 0; i < prob.Q; ++i) two_Q *= 2;
    rep.divisor_count_bound = two_Q * kw.a_kappa_q;

    rep.summed_inequality = rep.gprime_sum * Rat(rep.z_squared) <= Rat(rep.summed_rhs);
    rep.partition_identity = rep.summed_rhs == rep.z_squared + rep.divisor_sum;
    rep.dropped_term_variant_held = rep.gprime_sum * Rat(rep.z_squared) <= Rat(rep.divisor_sum);

    if (!rep.summed_inequality)
        throw identity_failure("summed_weight_check: summed weight inequality failed");
    if (!rep.partition_identity)
        throw identity_failure("summed_weight_check: reduced-fraction partition identity failed");
    if (rep.divisor_count > rep.divisor_count_bound)
        throw identity_failure("summed_weight_check: divisor count exceeds 2^Q A_K(Q)");
    return rep;
}

PsetReport pset_pipeline(const FieldPtr& spec, const std::vector<Poly>& pset, int N) {
    PsetReport rep;
    // precondition: a pairwise-coprime P-set
    for (const Poly& f : pset)
        if (!f.is_monic()) throw std::invalid_argument("pset_pipeline: elements must be monic");
    for (std::size_t i = 0; i < pset.size(); ++i)
        for (std::size_t j = i + 1; j < pset.size(); ++j)
            if (gcd(pset[i], pset[j]).degree() != 0)
                throw std::invalid_argument("pset_pipeline: set not pairwise coprime");
    for (const Poly& P : pset)
        for (const Poly& U : pset)
            for (const Poly& V : pset) {
                if (U.degree() <= P.degree() || V.degree() <= P.degree()) continue;
                if (P.divides(U + V)) throw std::invalid_argument("pset_pipeline: input is not a P-set");
            }

    rep.char2_vacuous = spec->p() == 2;
    for (const Poly& f : pset)
        if (f.degree() <= N) ++rep.a_s_n;

    for (int Q = 1; Q < N; ++Q) {
        PsetRow row;
        row.Q = Q;
        SieveProblem prob;
        prob.spec = spec;
        prob.N = N;
        prob.Q = Q;
        for (const Poly& f : pset)
            if (f.degree() > Q && f.degree() <= N) prob.big_n.push_back(f);
        bool degenerate = false;
        std::string note;
        for (const Poly& P : pset) {
            if (P.degree() < 1 || P.degree() > Q) continue;
            // classes mod P containing an element of S of degree > deg P
            std::set<unsigned long long> occupied;
            for (const Poly& U : pset)
                if (U.degree() > P.degree()) occupied.insert(U.mod(P).code());
            std::vector<Poly> forbidden;
            for (const Poly& h : enumerate_polys(spec, P.degree() - 1, EnumMode::AllDegAtMost))
                if (!occupied.count(h.code())) forbidden.push_back(h);
            if (forbidden.size() == static_cast<std::size_t>(prob.q_pow(P.degree()))) {
                degenerate = true;
                note = "Omega covers every class mod " + P.str() + " (no larger elements)";
            }
            prob.primes.push_back(P);
            prob.omega[P.code()] = forbidden;
        }
        std::sort(prob.primes.begin(), prob.primes.end());
        row.primes = prob.primes;
        row.degenerate = degenerate;
        row.note = note;

        // w(P) >= 1 + floor(q^{deg P}/2) holds for odd q by the P-set
        // antisymmetry argument; char 2 is vacuous
        row.w_lower_bound_ok = true;
        for (const Poly& P : prob.primes) {
            long long qd = prob.q_pow(P.degree());
            if (spec->p() != 2 && prob.w(P) < 1 + qd / 2) row.w_lower_bound_ok = false;
        }

        auto surv = survivors(prob);
        row.survivor_count = static_cast<long long>(surv.size());
        row.survivors_equal_window = surv.size() == prob.big_n.size();

        if (!degenerate && !prob.primes.empty()) {
            try {
                auto mrep = montgomery_bound(prob);
                row.bound = mrep.bound;
                long long qQ = prob.q_pow(Q);
                row.ob1_holds = Rat(rep.a_s_n) <= Rat(row.survivor_count) + Rat(qQ);
            } catch (const std::domain_error&) {
                row.degenerate = true;
                row.note = "weight denominator vanished";
            }
        } else if (prob.primes.empty()) {
            row.note = rep.char2_vacuous ? "no sieving moduli (char-2 P-sets are single-degree)"
                                         : "no sieving moduli at this Q";
            long long qQ = prob.q_pow(Q);
            row.ob1_holds = Rat(rep.a_s_n) <= Rat(row.survivor_count) + Rat(qQ);
        }
        rep.rows.push_back(std::move(row));
    }

    for (const auto& row : rep.rows)
        if (row.bound && (!rep.best_q || *row.bound < *rep.rows[*rep.best_q - 1].bound))
            rep.best_q = row.Q;
    return rep;
}

SqfreeReport squarefree_pipeline(const FieldPtr& spec, const std::vector<Poly>& family, int N,
                                 std::optional<int> Q_override) {
    SqfreeReport rep;
    if (N < 1) throw std::invalid_argument("squarefree_pipeline: N >= 1 required");
    rep.Q = Q_override ? *Q_override : (N + 2) / 3;
    rep.family_size = static_cast<long long>(family.size());

    for (const Poly& f : family) {
        if (!f.is_monic() || f.degree() > N)
            throw std::invalid_argument("squarefree_pipeline: family must be monic with deg <= N");
    }

    rep.family_valid = true;
    for (const Poly& f : family)
        for (const Poly& g : family)
            if (!is_squarefree(f + g)) rep.family_valid = false;

    SieveProblem prob;
    prob.spec = spec;
    prob.N = N;
    prob.Q = rep.Q;
    for (const Poly& f : family)
        if (f.degree() > rep.Q && f.degree() <= N) prob.big_n.push_back(f);

    for (int d = 1; 2 * d <= rep.Q; ++d)
        for (const Poly& P : enumerate_polys(spec, d, EnumMode::MonicExactDegree)) {
            if (!is_irreducible(P)) continue;
            Poly P2 = P * P;
            prob.primes.push_back(P2);
            // classes mod P^2 containing no element of the family
            std::set<unsigned long long> occupied, neg_classes;
            for (const Poly& f : family) {
                occupied.insert(f.mod(P2).code());
                neg_classes.insert((-f).mod(P2).code());
            }
            std::vector<Poly> forbidden;
            for (const Poly& h : enumerate_polys(spec, P2.degree() - 1, EnumMode::AllDegAtMost))
                if (!occupied.count(h.code())) forbidden.push_back(h);
            prob.omega[P2.code()] = forbidden;
            rep.omega_sizes.push_back(static_cast<long long>(forbidden.size()));
            rep.neg_class_sizes.push_back(static_cast<long long>(neg_classes.size()));
            rep.prime_squares.push_back(P2);
        }

    rep.w_lower_bound_ok = true;
    for (std::size_t i = 0; i < rep.prime_squares.size(); ++i) {
        long long qd = 1;
        for (int e = 0; e < rep.prime_squares[i].degree(); ++e) qd *= spec->q();
        if (spec->p() != 2 && rep.family_valid && !family.empty() &&
            rep.omega_sizes[i] < 1 + qd / 2)
            rep.w_lower_bound_ok = false;
    }

    auto surv = survivors(prob);
    rep.survivor_count = static_cast<long long>(surv.size());

    if (!prob.big_n.empty() || !prob.primes.empty()) {
        if (prob.Q < prob.N) {
            try {
                auto mrep = montgomery_bound(prob);
                rep.bound = mrep.bound;
            } catch (const std::domain_error&) {
                rep.bound.reset();
            }
        }
    }
    long long qQ = 1;
    for (int e = 0; e < rep.Q; ++e) qQ *= spec->q();
    rep.obs1_holds = rep.family_size <= rep.survivor_count + qQ;

    for (int d = 1; 2 * d <= rep.Q; ++d) rep.pnt_lower_irreducibles += count_irreducibles(spec->q(), d);
    return rep;
}

} // namespace qtsieve
