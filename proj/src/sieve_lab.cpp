#include "qtsieve/sieve_lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "qtsieve/errors.hpp"

namespace qtsieve {

long long SieveInstance::coeff_dim() const {
    long long d = 1;
    for (int i = 0; i <= N; ++i) d *= spec->q();
    return d;
}

void SieveInstance::validate() const {
    if (N < 0 || Q < 0) throw std::invalid_argument("SieveInstance: negative degree bound");
    std::set<unsigned long long> seen;
    for (const Poly& f : moduli) {
        if (f.is_zero() || !f.is_monic()) throw std::invalid_argument("SieveInstance: moduli must be non-zero monic");
        if (f.degree() > Q) throw std::invalid_argument("SieveInstance: modulus degree exceeds Q");
        if (!seen.insert(f.code()).second) throw std::invalid_argument("SieveInstance: duplicate modulus");
    }
    if (static_cast<long long>(coeffs.size()) != coeff_dim())
        throw std::invalid_argument("SieveInstance: coefficient vector has wrong length");
}

std::vector<FareyPoint> farey_system(const std::vector<Poly>& moduli) {
    std::vector<FareyPoint> pts;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const Poly& f = moduli[i];
        const auto& spec = f.spec();
        if (f.degree() == 0) {
            pts.push_back({static_cast<int>(i), Poly::zero(spec)});
            continue;
        }
        for (const Poly& r : enumerate_polys(spec, f.degree() - 1, EnumMode::AllDegAtMost)) {
            if (r.is_zero()) continue;
            if (gcd(r, f).degree() != 0) continue;
            pts.push_back({static_cast<int>(i), r});
        }
    }
    return pts;
}

namespace {

// complex p-th roots of unity table
std::vector<Cplx> root_table(int p) {
    std::vector<Cplx> t(p);
    for (int k = 0; k < p; ++k) {
        double ang = 2.0 * M_PI * k / p;
        t[k] = Cplx(std::cos(ang), std::sin(ang));
    }
    return t;
}

} // namespace

Cplx exponential_sum(const SieveInstance& inst, const Poly& f, const Poly& r) {
    if (f.degree() >= 1 && gcd(r, f).degree() != 0)
        throw std::invalid_argument("exponential_sum: (f, r) is not a Farey point");
    auto roots = root_table(inst.spec->p());
    Cplx acc(0, 0);
    auto gs = enumerate_polys(inst.spec, inst.N, EnumMode::AllDegAtMost);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (inst.coeffs[i] == Cplx(0, 0)) continue;
        acc += inst.coeffs[i] * roots[additive_char_exponent(gs[i], r, f)];
    }
    return acc;
}

double sieve_lhs(const SieveInstance& inst) {
    double total = 0;
    for (const FareyPoint& pt : farey_system(inst.moduli))
        total += std::norm(exponential_sum(inst, inst.moduli[pt.modulus_index], pt.r));
    return total;
}

CycValue gram_entry_direct(const FieldPtr& spec, int N, const Poly& f, const Poly& r,
                           const Poly& f2, const Poly& r2) {
    // h / F with F = f f', h = r f' - r' f
    Poly F = f * f2;
    Poly h = (r * f2 - r2 * f).mod(F);
    CycAccum acc(spec->p());
    for (const Poly& g : enumerate_polys(spec, N, EnumMode::AllDegAtMost))
        acc.add_root(additive_char_exponent(g, h, F));
    return acc.value();
}

long long gram_entry_fast(const FieldPtr& spec, int N, const Poly& f, const Poly& r,
                          const Poly& f2, const Poly& r2) {
    // The entry is a full character sum over the coefficient space, so it is
    // q^{N+1} when g -> e(g h/F) is trivial and 0 otherwise. Triviality means
    // the t^{deg F - 1} coefficient of (t^j h mod F) vanishes for j = 0..N.
    Poly F = f * f2;
    Poly h = (r * f2 - r2 * f).mod(F);
    const int dF = F.degree();
    long long qN1 = 1;
    for (int i = 0; i <= N; ++i) qN1 *= spec->q();
    if (dF == 0) return qN1;  // both moduli trivial
    Poly cur = h;
    for (int j = 0; j <= N; ++j) {
        if (cur.coeff(dF - 1) != 0) return 0;
        cur = (cur * Poly::t(spec)).mod(F);
    }
    return qN1;
}

namespace {

struct PowerResult {
    double lambda = 0;
    std::vector<Cplx> vec;
    long long iterations = 0;
};

PowerResult power_iterate_from(std::vector<Cplx> v,
                               const std::function<void(const std::vector<Cplx>&, std::vector<Cplx>&)>& apply,
                               std::size_t dim, const OperatorNormOptions& opts) {
    std::vector<Cplx> w(dim);
    double lambda = 0, prev = -1;
    long long it = 0;
    std::size_t restart = 0;
    for (; it < opts.max_iters; ++it) {
        apply(v, w);
        double rayleigh = 0;
        for (std::size_t i = 0; i < dim; ++i)
            rayleigh += (std::conj(v[i]) * w[i]).real();
        double nw = 0;
        for (const Cplx& x : w) nw += std::norm(x);
        nw = std::sqrt(nw);
        if (nw == 0.0) {
            // start vector in the kernel; deterministic basis-vector restart
            if (restart < dim) {
                std::fill(v.begin(), v.end(), Cplx(0, 0));
                v[restart++] = Cplx(1, 0);
                prev = -1;
                continue;
            }
            return {0.0, v, it};  // the operator is zero
        }
        lambda = rayleigh;
        for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / nw;
        if (it > 0 && std::abs(lambda - prev) <= opts.tol * std::max(1.0, std::abs(lambda)))
            return {lambda, v, it};
        prev = lambda;
    }
    throw numeric_error("power iteration did not converge", std::abs(lambda - prev));
}

// The all-ones start of the design decision is an exact eigenvector of these
// structured Grams whenever the row sums are constant, and then the iteration
// locks onto a possibly non-maximal eigenvalue. A second deterministic
// seeded start escapes any fixed invariant subspace; the larger Rayleigh
// value wins. Both runs are reproducible.
PowerResult power_iteration(const std::function<void(const std::vector<Cplx>&, std::vector<Cplx>&)>& apply,
                            std::size_t dim, const OperatorNormOptions& opts) {
    std::vector<Cplx> ones(dim, Cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
    PowerResult a = power_iterate_from(std::move(ones), apply, dim, opts);

    std::mt19937_64 rng(0x5eed5eed5eed5eedull);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Cplx> rv(dim);
    double n2 = 0;
    for (auto& x : rv) {
        x = Cplx(unif(rng), unif(rng));
        n2 += std::norm(x);
    }
    for (auto& x : rv) x /= std::sqrt(n2);
    PowerResult b = power_iterate_from(std::move(rv), apply, dim, opts);

    PowerResult& best = b.lambda > a.lambda ? b : a;
    best.iterations = a.iterations + b.iterations;
    return best;
}

} // namespace

OperatorNormResult operator_norm(const FieldPtr& spec, int N, const std::vector<Poly>& moduli,
                                 const OperatorNormOptions& opts) {
    auto pts = farey_system(moduli);
    const std::size_t npts = pts.size();
    long long dim_ll = 1;
    for (int i = 0; i <= N; ++i) dim_ll *= spec->q();
    const std::size_t dim = static_cast<std::size_t>(dim_ll);
    if (npts == 0) throw std::invalid_argument("operator_norm: empty moduli set");
    if (npts > opts.dense_dim_cap || dim > opts.dense_dim_cap)
        throw resource_cap_error("operator_norm: Gram dimension exceeds cap");

    // point-side Gram (entries are 0 or q^{N+1})
    std::vector<double> gram_pt(npts * npts);
    for (std::size_t i = 0; i < npts; ++i) {
        for (std::size_t j = i; j < npts; ++j) {
            long long e = gram_entry_fast(spec, N, moduli[pts[i].modulus_index], pts[i].r,
                                          moduli[pts[j].modulus_index], pts[j].r);
            gram_pt[i * npts + j] = static_cast<double>(e);
            gram_pt[j * npts + i] = static_cast<double>(e);
        }
    }

    OperatorNormResult res;
    res.n_points = static_cast<long long>(npts);

    auto apply_point = [&](const std::vector<Cplx>& v, std::vector<Cplx>& out) {
        for (std::size_t i = 0; i < npts; ++i) {
            Cplx acc(0, 0);
            for (std::size_t j = 0; j < npts; ++j) acc += gram_pt[i * npts + j] * v[j];
            out[i] = acc;
        }
    };
    auto pr_point = power_iteration(apply_point, npts, opts);
    res.lambda_point = pr_point.lambda;
    res.iterations_point = pr_point.iterations;

    // coefficient side via B (points x dim), matrix-free product B^H (B v)
    auto roots = root_table(spec->p());
    std::vector<Cplx> B(npts * dim);
    {
        auto gs = enumerate_polys(spec, N, EnumMode::AllDegAtMost);
        for (std::size_t i = 0; i < npts; ++i) {
            const Poly& f = moduli[pts[i].modulus_index];
            const Poly& r = pts[i].r;
            for (std::size_t g = 0; g < dim; ++g)
                B[i * dim + g] = roots[additive_char_exponent(gs[g], r, f)];
        }
    }
    std::vector<Cplx> tmp(npts);
    auto apply_coeff = [&](const std::vector<Cplx>& v, std::vector<Cplx>& out) {
        for (std::size_t i = 0; i < npts; ++i) {
            Cplx acc(0, 0);
            const Cplx* row = &B[i * dim];
            for (std::size_t g = 0; g < dim; ++g) acc += row[g] * v[g];
            tmp[i] = acc;
        }
        for (std::size_t g = 0; g < dim; ++g) {
            Cplx acc(0, 0);
            for (std::size_t i = 0; i < npts; ++i) acc += std::conj(B[i * dim + g]) * tmp[i];
            out[g] = acc;
        }
    };
    auto pr_coeff = power_iteration(apply_coeff, dim, opts);
    res.lambda_coeff = pr_coeff.lambda;
    res.iterations_coeff = pr_coeff.iterations;
    res.eigvec = std::move(pr_coeff.vec);

    double denom = std::max({std::abs(res.lambda_point), std::abs(res.lambda_coeff), 1.0});
    res.duality_gap_rel = std::abs(res.lambda_point - res.lambda_coeff) / denom;
    if (res.duality_gap_rel > opts.duality_rel_tol) {
        std::ostringstream os;
        os << "operator_norm duality check failed: point " << res.lambda_point << " vs coeff "
           << res.lambda_coeff;
        throw numeric_error(os.str(), res.duality_gap_rel);
    }
    return res;
}

std::vector<ScanFamilyInstance> subsets_family(const FieldPtr& spec, int max_deg,
                                               const std::vector<int>& Ns) {
    std::vector<Poly> pool;
    for (int d = 1; d <= max_deg; ++d)
        for (const Poly& f : enumerate_polys(spec, d, EnumMode::MonicExactDegree)) pool.push_back(f);
    if (pool.size() > 20) throw resource_cap_error("subsets_family: pool too large");
    std::vector<ScanFamilyInstance> fam;
    for (std::uint64_t mask = 1; mask < (1ull << pool.size()); ++mask) {
        std::vector<Poly> S;
        int Q = 0;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (mask & (1ull << i)) {
                S.push_back(pool[i]);
                Q = std::max(Q, pool[i].degree());
            }
        for (int N : Ns) fam.push_back({spec, N, Q, S});
    }
    return fam;
}

std::vector<RatioReport> ratio_scan(const std::vector<ScanFamilyInstance>& family, ScanMode mode,
                                    std::uint64_t seed, int samples, const OperatorNormOptions& opts) {
    std::vector<RatioReport> out;
    for (std::size_t idx = 0; idx < family.size(); ++idx) {
        const auto& inst = family[idx];
        RatioReport rep;
        rep.q = inst.spec->q();
        rep.N = inst.N;
        rep.Q = inst.Q;
        rep.moduli = inst.moduli;
        double qN1 = std::pow(static_cast<double>(rep.q), inst.N + 1);
        double qN = std::pow(static_cast<double>(rep.q), inst.N);
        double qQm1 = std::pow(static_cast<double>(rep.q), inst.Q - 1);
        double qQ = std::pow(static_cast<double>(rep.q), inst.Q);
        rep.trivial_rhs_constant = qN1 + static_cast<double>(inst.moduli.size()) * qQm1;
        rep.conjecture_base = qN + static_cast<double>(inst.moduli.size()) * qQ;

        if (mode == ScanMode::Eigen) {
            rep.mode = "eigen";
            auto norm = operator_norm(inst.spec, inst.N, inst.moduli, opts);
            rep.lhs = norm.lambda();
            rep.coeff_norm2 = 1.0;
            rep.witness = norm.eigvec;
            rep.lambda_point = norm.lambda_point;
            rep.lambda_coeff = norm.lambda_coeff;
        } else {
            rep.mode = "random-coeffs";
            std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (idx + 1)));
            std::uniform_real_distribution<double> unif(-1.0, 1.0);
            double best_ratio = -1;
            SieveInstance si{inst.spec, inst.N, inst.Q, inst.moduli, {}};
            const long long dim = si.coeff_dim();
            for (int s = 0; s < samples; ++s) {
                si.coeffs.assign(dim, Cplx(0, 0));
                for (auto& c : si.coeffs) c = Cplx(unif(rng), unif(rng));
                double n2 = 0;
                for (const auto& c : si.coeffs) n2 += std::norm(c);
                double lhs = sieve_lhs(si);
                double ratio = lhs / (rep.trivial_rhs_constant * n2);
                if (ratio > best_ratio) {
                    best_ratio = ratio;
                    rep.lhs = lhs;
                    rep.coeff_norm2 = n2;
                    rep.witness = si.coeffs;
                }
            }
        }
        rep.ratio = rep.lhs / (rep.trivial_rhs_constant * rep.coeff_norm2);
        rep.implied_epsilon_factor = rep.lhs / (rep.conjecture_base * rep.coeff_norm2);
        // tight instances sit exactly at 1; flag only beyond numeric noise
        rep.violation = rep.ratio > 1.0 + 1e-9;
        if (rep.violation) {
            // independently re-verify by direct evaluation with the witness
            SieveInstance si{inst.spec, inst.N, inst.Q, inst.moduli, rep.witness};
            rep.reverified_lhs = sieve_lhs(si);
        }
        out.push_back(std::move(rep));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RatioReport& a, const RatioReport& b) { return a.ratio > b.ratio; });
    return out;
}

MultSieveReport mult_sieve_lhs(const FieldPtr& spec, int N, const std::vector<Poly>& moduli,
                               const std::vector<Cplx>& coeffs, std::size_t unit_cap) {
    MultSieveReport rep;
    auto gs = enumerate_polys(spec, N, EnumMode::AllDegAtMost);
    if (coeffs.size() != gs.size())
        throw std::invalid_argument("mult_sieve_lhs: coefficient vector has wrong length");
    for (const auto& c : coeffs) rep.coeff_norm2 += std::norm(c);
    int Q = 0;
    for (const Poly& f : moduli) Q = std::max(Q, f.degree());
    double q = spec->q();
    rep.trivial_rhs_constant = std::pow(q, N + 1) + static_cast<double>(moduli.size()) * std::pow(q, Q - 1);
    rep.conjecture_base = std::pow(q, N) + static_cast<double>(moduli.size()) * std::pow(q, Q);

    for (const Poly& f : moduli) {
        auto group = std::make_shared<const UnitGroup>(f, unit_cap);
        const long long m = group->exponent();
        std::vector<Cplx> roots(m);
        for (long long k = 0; k < m; ++k) {
            double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m);
            roots[k] = Cplx(std::cos(ang), std::sin(ang));
        }
        double qd = std::pow(q, f.degree());
        double weight = qd / static_cast<double>(group->phi());
        for (const Character& chi : enumerate_characters(group)) {
            if (!is_primitive(chi)) continue;
            ++rep.primitive_characters;
            Cplx acc(0, 0);
            for (std::size_t i = 0; i < gs.size(); ++i) {
                if (coeffs[i] == Cplx(0, 0)) continue;
                long long k = chi.value_exponent(gs[i]);
                if (k < 0) continue;
                acc += coeffs[i] * roots[k];
            }
            rep.lhs += weight * std::norm(acc);
        }
    }
    return rep;
}

AuditReport shifted_product_audit(const std::vector<Poly>& family_f, const std::vector<Poly>& family_g,
                          const FieldPtr& spec, int Q, std::size_t unit_cap) {
    AuditReport rep;
    rep.Q = Q;
    std::vector<Poly> S;
    for (const Poly& P : enumerate_polys(spec, Q, EnumMode::MonicExactDegree))
        if (is_irreducible(P)) S.push_back(P);

    for (const Poly& P : S) {
        AuditRow row;
        row.P = P;
        Poly P2 = P * P;
        auto group = std::make_shared<const UnitGroup>(P2, unit_cap);
        auto chars = enumerate_characters(group);
        const int m = static_cast<int>(group->exponent());
        const Poly minus_one = Poly::constant(spec, spec->neg(1));

        // direct count and coprime pairs
        for (const Poly& f : family_f)
            for (const Poly& g : family_g)
                if ((f * g + Poly::one(spec)).mod(P2).is_zero()) ++row.direct_count;
        // (fg, P) = 1 iff P divides neither f nor g
        long long cf = 0, cg = 0;
        for (const Poly& f : family_f)
            if (!f.mod(P).is_zero()) ++cf;
        for (const Poly& g : family_g)
            if (!g.mod(P).is_zero()) ++cg;
        row.coprime_pairs = cf * cg;

        // character sums A_chi, B_chi as exact cyclotomic values
        CycValue X = CycValue::zero(m);
        CycValue SFsum = CycValue::zero(m);
        CycValue SGsum = CycValue::zero(m);
        for (const Character& chi : chars) {
            CycAccum accA(m), accB(m);
            long long nzA = 0, nzB = 0;
            for (const Poly& f : family_f) {
                long long k = chi.value_exponent(f);
                if (k >= 0) { accA.add_root(k); ++nzA; }
            }
            for (const Poly& g : family_g) {
                long long k = chi.value_exponent(g);
                if (k >= 0) { accB.add_root(k); ++nzB; }
            }
            CycValue A = accA.value(), B = accB.value();
            long long km1 = chi.value_exponent(minus_one);
            if (km1 < 0) throw identity_failure("shifted_product_audit: -1 not a unit");
            X = X + CycValue::root(m, -km1) * A * B;
            if (!chi.is_principal()) {
                SFsum = SFsum + A.abs_squared();
                SGsum = SGsum + B.abs_squared();
                row.mid_contrib += std::abs(A.embed()) * std::abs(B.embed());
            }
        }
        long long phi2 = group->phi();
        if (X != CycValue::integer(phi2 * row.direct_count)) {
            std::ostringstream os;
            os << "shifted_product_audit: character identity failed at P=" << P.str()
               << ": expression " << X.str() << " vs phi*direct " << phi2 * row.direct_count;
            throw identity_failure(os.str());
        }
        row.identity_exact = true;
        row.sf_contrib = SFsum.as_integer();
        row.sg_contrib = SGsum.as_integer();

        rep.S_total += row.coprime_pairs;
        rep.SF += row.sf_contrib;
        rep.SG += row.sg_contrib;
        rep.mid_total += row.mid_contrib;
        rep.rows.push_back(std::move(row));
    }

    rep.hypothesis_ok = std::all_of(rep.rows.begin(), rep.rows.end(),
                                    [](const AuditRow& r) { return r.direct_count == 0; });
    double bound = std::sqrt(static_cast<double>(rep.SF) * static_cast<double>(rep.SG));
    rep.cs_mid_ok = rep.mid_total <= bound + 1e-9 * std::max(1.0, bound);
    if (!rep.cs_mid_ok)
        throw identity_failure("shifted_product_audit: Cauchy-Schwarz on the character-sum middle quantity failed");
    rep.cs_chain_ok =
        static_cast<__int128>(rep.S_total) * rep.S_total <= static_cast<__int128>(rep.SF) * rep.SG;
    if (rep.hypothesis_ok && !rep.cs_chain_ok)
        throw identity_failure("shifted_product_audit: S <= sqrt(SF*SG) failed in the hypothesis regime");
    return rep;
}

} // namespace qtsieve
