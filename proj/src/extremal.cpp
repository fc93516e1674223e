#include "qtsieve/extremal.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qtsieve/errors.hpp"

namespace qtsieve {

PsetCheck is_pset(const std::vector<Poly>& S, bool require_coprime) {
    PsetCheck res;
    if (require_coprime) {
        for (std::size_t i = 0; i < S.size(); ++i)
            for (std::size_t j = i + 1; j < S.size(); ++j)
                if (gcd(S[i], S[j]).degree() != 0) {
                    res.coprime_violation = {S[i], S[j]};
                    return res;
                }
    }
    for (const Poly& P : S)
        for (const Poly& U : S) {
            if (U.degree() <= P.degree()) continue;
            for (const Poly& V : S) {
                if (V.degree() <= P.degree()) continue;
                if (P.divides(U + V)) {
                    res.violation = {P, U, V};
                    return res;
                }
            }
        }
    res.ok = true;
    return res;
}

namespace {

std::vector<Poly> monic_up_to(const FieldPtr& spec, int N) {
    std::vector<Poly> out;
    for (int d = 0; d <= N; ++d)
        for (const Poly& f : enumerate_polys(spec, d, EnumMode::MonicExactDegree)) out.push_back(f);
    return out;  // ascending code = ascending degree, then lex
}

std::optional<double> exponent_of(long long size, int q, int N) {
    if (size <= 0 || N <= 0) return std::nullopt;
    return std::log(static_cast<double>(size)) / (std::log(static_cast<double>(q)) * N);
}

// candidate c joins current: every triple involving c must stay legal.
// Members arrive in ascending degree order, so c has maximal degree and the
// new triples are (P in cur, U in cur+{c}, V = c) plus (P = c, U, V larger) -
// the latter is vacuous now and re-checked when later elements join.
bool pset_compatible(const std::vector<Poly>& cur, const Poly& c, bool require_coprime) {
    for (const Poly& P : cur) {
        if (require_coprime && gcd(P, c).degree() != 0) return false;
        if (P.degree() < c.degree()) {
            if (P.divides(c + c)) return false;
            for (const Poly& U : cur)
                if (U.degree() > P.degree() && P.divides(U + c)) return false;
        }
    }
    return true;
}

struct PsetSearch {
    const std::vector<Poly>& cand;
    bool require_coprime;
    std::vector<Poly> cur;
    std::vector<Poly> best;

    void dfs(std::size_t idx) {
        if (cur.size() > best.size()) best = cur;
        if (idx == cand.size()) return;
        if (cur.size() + (cand.size() - idx) <= best.size()) return;  // bound
        if (pset_compatible(cur, cand[idx], require_coprime)) {
            cur.push_back(cand[idx]);
            dfs(idx + 1);
            cur.pop_back();
        }
        dfs(idx + 1);
    }
};

} // namespace

ExtremalReport max_pset(const FieldPtr& spec, int N, bool require_coprime, std::size_t candidate_cap) {
    ExtremalReport rep;
    rep.kind = "pset";
    rep.q = spec->q();
    rep.N = N;
    rep.flag = require_coprime;
    auto cand = monic_up_to(spec, N);
    if (cand.size() > candidate_cap) {
        // greedy lower bound, clearly labeled
        std::vector<Poly> greedy;
        for (const Poly& c : cand) {
            std::vector<Poly> trial = greedy;
            trial.push_back(c);
            if (pset_compatible(greedy, c, require_coprime) && is_pset(trial, require_coprime).ok)
                greedy = std::move(trial);
        }
        rep.exact = false;
        rep.method = "greedy lower bound (candidate cap exceeded)";
        rep.witness = greedy;
        rep.max_size = static_cast<long long>(greedy.size());
    } else {
        PsetSearch search{cand, require_coprime, {}, {}};
        search.dfs(0);
        rep.witness = search.best;
        rep.max_size = static_cast<long long>(search.best.size());
        rep.method = "exhaustive depth-first search";
        auto check = is_pset(rep.witness, require_coprime);
        if (!check.ok) throw identity_failure("max_pset: witness fails its own predicate");
    }
    rep.empirical_exponent = exponent_of(rep.max_size, rep.q, N);
    return rep;
}

namespace {

struct CliqueSolver {
    const std::vector<std::vector<char>>& adj;
    std::vector<int> best_clique;
    std::vector<int> cur;

    // Tomita-style branch and bound with greedy colouring bound
    void expand(std::vector<int>& cand) {
        if (cand.empty()) {
            if (cur.size() > best_clique.size()) best_clique = cur;
            return;
        }
        // greedy colouring: classes of pairwise non-adjacent vertices
        std::vector<int> color(cand.size());
        std::vector<std::vector<int>> classes;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            int v = cand[i];
            std::size_t c = 0;
            for (; c < classes.size(); ++c) {
                bool fits = true;
                for (int u : classes[c])
                    if (adj[u][v]) { fits = false; break; }
                if (fits) break;
            }
            if (c == classes.size()) classes.emplace_back();
            classes[c].push_back(v);
            color[i] = static_cast<int>(c) + 1;
        }
        // order candidates by colour ascending; process from the back
        std::vector<std::size_t> order(cand.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return color[a] < color[b]; });
        std::vector<int> sorted_cand(cand.size());
        std::vector<int> sorted_color(cand.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            sorted_cand[i] = cand[order[i]];
            sorted_color[i] = color[order[i]];
        }
        for (std::size_t ii = sorted_cand.size(); ii-- > 0;) {
            if (cur.size() + sorted_color[ii] <= best_clique.size()) return;
            int v = sorted_cand[ii];
            cur.push_back(v);
            std::vector<int> next;
            for (std::size_t j = 0; j < ii; ++j)
                if (adj[v][sorted_cand[j]]) next.push_back(sorted_cand[j]);
            expand(next);
            cur.pop_back();
        }
    }
};

} // namespace

long long max_clique_size(const std::vector<std::vector<char>>& adj) {
    const std::size_t n = adj.size();
    std::vector<int> cand(n);
    for (std::size_t i = 0; i < n; ++i) cand[i] = static_cast<int>(i);
    CliqueSolver solver{adj, {}, {}};
    solver.expand(cand);
    return static_cast<long long>(solver.best_clique.size());
}

namespace {

// lexicographically least maximum clique containing `fixed`, or nullopt
std::optional<std::vector<int>> lex_least_clique(const std::vector<std::vector<char>>& adj,
                                                 long long omega) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> chosen;
    auto feasible = [&](const std::vector<int>& fixed) {
        // maximum clique among common neighbours of `fixed`
        std::vector<int> cand;
        for (int v = fixed.empty() ? 0 : fixed.back() + 1; v < n; ++v) {
            bool ok = true;
            for (int u : fixed)
                if (!adj[u][v]) { ok = false; break; }
            if (ok) cand.push_back(v);
        }
        std::vector<std::vector<char>> sub(cand.size(), std::vector<char>(cand.size(), 0));
        for (std::size_t i = 0; i < cand.size(); ++i)
            for (std::size_t j = 0; j < cand.size(); ++j) sub[i][j] = adj[cand[i]][cand[j]];
        return static_cast<long long>(fixed.size()) + max_clique_size(sub) >= omega;
    };
    if (!feasible(chosen)) return std::nullopt;
    while (static_cast<long long>(chosen.size()) < omega) {
        bool extended = false;
        for (int v = chosen.empty() ? 0 : chosen.back() + 1; v < n && !extended; ++v) {
            bool ok = true;
            for (int u : chosen)
                if (!adj[u][v]) { ok = false; break; }
            if (!ok) continue;
            chosen.push_back(v);
            if (feasible(chosen)) extended = true;
            else chosen.pop_back();
        }
        if (!extended) return std::nullopt;  // cannot happen when omega is correct
    }
    return chosen;
}

} // namespace

ExtremalReport max_sqfree_sum_family(const FieldPtr& spec, int N, bool include_self_pairs,
                                     std::size_t vertex_cap) {
    ExtremalReport rep;
    rep.kind = "sqfree-sum";
    rep.q = spec->q();
    rep.N = N;
    rep.flag = include_self_pairs;
    auto all = monic_up_to(spec, N);
    std::vector<Poly> verts;
    for (const Poly& f : all)
        if (!include_self_pairs || is_squarefree(f + f)) verts.push_back(f);
    if (verts.size() > vertex_cap) throw resource_cap_error("max_sqfree_sum_family: vertex cap exceeded");
    const std::size_t n = verts.size();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            adj[i][j] = adj[j][i] = is_squarefree(verts[i] + verts[j]) ? 1 : 0;

    long long omega = max_clique_size(adj);
    rep.max_size = omega;
    rep.method = "branch-and-bound maximum clique with greedy colouring";
    if (omega > 0) {
        auto lex = lex_least_clique(adj, omega);
        if (!lex) throw identity_failure("max_sqfree_sum_family: witness extraction failed");
        for (int v : *lex) rep.witness.push_back(verts[v]);
        // post-check the witness against its defining predicate
        for (std::size_t i = 0; i < rep.witness.size(); ++i)
            for (std::size_t j = i + (include_self_pairs ? 0 : 1); j < rep.witness.size(); ++j)
                if (!is_squarefree(rep.witness[i] + rep.witness[j]))
                    throw identity_failure("max_sqfree_sum_family: witness fails the predicate");
    }
    rep.empirical_exponent = exponent_of(rep.max_size, rep.q, N);
    return rep;
}

ExtremalReport max_shifted_product_family(const FieldPtr& spec, int N, bool include_all_pairs,
                                          std::size_t vertex_cap) {
    ExtremalReport rep;
    rep.kind = "shifted-product";
    rep.q = spec->q();
    rep.N = N;
    rep.flag = include_all_pairs;
    auto verts = monic_up_to(spec, N);
    const std::size_t n = verts.size();
    const Poly one = Poly::one(spec);
    auto ok_pair = [&](std::size_t i, std::size_t j) {
        if (!include_all_pairs && i == j) return true;
        return is_squarefree(verts[i] * verts[j] + one);
    };

    if (n <= vertex_cap) {
        // exact: for each F, the largest admissible G is the common
        // compatibility set; maximize min(|F|, |G|)
        std::vector<std::uint64_t> compat(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (ok_pair(i, j)) compat[i] |= (1ull << j);
        long long best = 0;
        std::uint64_t bestF = 0, bestG = 0;
        for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
            std::uint64_t g = ~0ull >> (64 - n);
            std::uint64_t m = mask;
            while (m) {
                std::size_t i = static_cast<std::size_t>(__builtin_ctzll(m));
                g &= compat[i];
                m &= m - 1;
            }
            long long scoreF = __builtin_popcountll(mask);
            long long scoreG = __builtin_popcountll(g);
            long long score = std::min(scoreF, scoreG);
            if (score > best) {
                best = score;
                bestF = mask;
                bestG = g;
            }
        }
        rep.max_size = best;
        rep.method = "exact subset enumeration over F with maximal compatible G";
        if (best > 0) {
            for (std::size_t i = 0; i < n; ++i) {
                if (bestF & (1ull << i)) rep.witness.push_back(verts[i]);
                if (bestG & (1ull << i)) rep.witness_second.push_back(verts[i]);
            }
            // post-check
            for (const Poly& f : rep.witness)
                for (const Poly& g : rep.witness_second)
                    if ((include_all_pairs || f != g) && !is_squarefree(f * g + one))
                        throw identity_failure("max_shifted_product_family: witness fails the predicate");
        }
    } else {
        // heuristic with a degree certificate: any solution of value k needs
        // at least k vertices with at least k compatible partners
        std::vector<long long> deg(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (ok_pair(i, j)) ++deg[i];
        std::vector<long long> sorted = deg;
        std::sort(sorted.rbegin(), sorted.rend());
        long long ub = 0;
        for (std::size_t k = 1; k <= n; ++k)
            if (sorted[k - 1] >= static_cast<long long>(k)) ub = static_cast<long long>(k);
        // greedy F: repeatedly add the vertex keeping the compatible G largest
        std::vector<char> inF(n, 0);
        std::vector<char> inG(n, 1);
        long long best = 0;
        for (;;) {
            long long bestGain = -1;
            std::size_t pick = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (inF[i]) continue;
                long long gsize = 0;
                for (std::size_t j = 0; j < n; ++j)
                    if (inG[j] && ok_pair(i, j)) ++gsize;
                if (gsize > bestGain) { bestGain = gsize; pick = i; }
            }
            if (pick == n) break;
            inF[pick] = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (inG[j] && !ok_pair(pick, j)) inG[j] = 0;
            long long fsize = std::count(inF.begin(), inF.end(), 1);
            long long gsize = std::count(inG.begin(), inG.end(), 1);
            best = std::max(best, std::min(fsize, gsize));
            if (fsize >= static_cast<long long>(n)) break;
        }
        rep.max_size = best;
        rep.exact = false;
        rep.upper_bound = ub;
        rep.method = "greedy lower bound with degree-certificate upper bound";
    }
    rep.empirical_exponent = exponent_of(rep.max_size, rep.q, N);
    return rep;
}

Trajectory exponent_trajectory(const std::string& kind, const FieldPtr& spec,
                               const std::vector<int>& Ns, bool flag) {
    Trajectory tr;
    tr.kind = kind;
    tr.q = spec->q();
    tr.flag = flag;
    for (int N : Ns) {
        ExtremalReport rep;
        if (kind == "pset") rep = max_pset(spec, N, flag);
        else if (kind == "sqfree-sum") rep = max_sqfree_sum_family(spec, N, flag);
        else if (kind == "shifted-product") rep = max_shifted_product_family(spec, N, flag);
        else throw std::invalid_argument("exponent_trajectory: unknown kind " + kind);
        tr.rows.push_back({N, rep.max_size, rep.empirical_exponent});
    }
    return tr;
}

} // namespace qtsieve
