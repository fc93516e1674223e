#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtsieve/poly.hpp"

namespace qtsieve {

// Resource caps; QTSIEVE_CAP_OVERRIDE ("key=value[,key=value...]") overrides
// individual entries, e.g. QTSIEVE_CAP_OVERRIDE=unit_group=20000.
struct Caps {
    std::size_t enumeration = 1u << 22;
    std::size_t unit_group = 10000;
    std::size_t matrix_dim = 4096;
    std::size_t clique_vertices = 64;
    std::size_t subset_products = 20;
    std::size_t pset_candidates = 64;
    std::size_t biclique_vertices = 20;

    void apply_env_override();          // reads QTSIEVE_CAP_OVERRIDE
    void validate() const;              // all caps positive
};

struct ExperimentConfig {
    std::string kind;
    int p = 0;
    int n = 1;
    int q = 0;                          // q xor (p, n); q wins if both given
    std::vector<int> modulus;           // optional field modulus override
    int N = -1;
    int Q = -1;                         // optional; kind-specific default
    std::vector<int> N_list;            // trajectory / scan
    int max_deg = 2;                    // scan and audit pools
    std::uint64_t seed = 0;
    int workers = 1;
    std::string out_dir;
    double epsilon = 0.01;              // reported with conjecture ratios
    bool flag = true;                   // coprime / self-pairs / all-pairs
    std::string mode = "eigen";
    std::string problem = "pset";       // trajectory: pset | sqfree-sum | shifted-product
    int samples = 8;
    int family_size = 4;
    std::vector<std::string> moduli;    // explicit S, poly strings
    std::vector<std::string> family_f;  // audit / sqfree / pset inputs
    std::vector<std::string> family_g;
    Caps caps;

    FieldPtr make_field() const;
    void validate() const;              // schema check before compute
};

// key = value text file; '#' comments; lists comma-separated.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_kv(const std::map<std::string, std::string>& kv);

// "t^2+2*t+1" with coefficients given as field-element indices; also accepts
// bare "1", "t", "2*t^3".
Poly parse_poly(const FieldPtr& spec, const std::string& text);
std::vector<Poly> parse_poly_list(const FieldPtr& spec, const std::vector<std::string>& texts);

} // namespace qtsieve
