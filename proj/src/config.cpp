#include "qtsieve/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qtsieve {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

long long to_int(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer for '" + key + "': " + s);
    }
}

} // namespace

void Caps::apply_env_override() {
    const char* env = std::getenv("QTSIEVE_CAP_OVERRIDE");
    if (!env) return;
    for (const std::string& entry : split(env, ',')) {
        auto eq = entry.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("QTSIEVE_CAP_OVERRIDE: expected key=value");
        std::string key = trim(entry.substr(0, eq));
        long long value = to_int(trim(entry.substr(eq + 1)), "QTSIEVE_CAP_OVERRIDE." + key);
        if (value <= 0) throw std::invalid_argument("QTSIEVE_CAP_OVERRIDE: caps must be positive");
        auto v = static_cast<std::size_t>(value);
        if (key == "enumeration") enumeration = v;
        else if (key == "unit_group") unit_group = v;
        else if (key == "matrix_dim") matrix_dim = v;
        else if (key == "clique_vertices") clique_vertices = v;
        else if (key == "subset_products") subset_products = v;
        else if (key == "pset_candidates") pset_candidates = v;
        else if (key == "biclique_vertices") biclique_vertices = v;
        else throw std::invalid_argument("QTSIEVE_CAP_OVERRIDE: unknown cap '" + key + "'");
    }
}

void Caps::validate() const {
    if (!enumeration || !unit_group || !matrix_dim || !clique_vertices || !subset_products ||
        !pset_candidates || !biclique_vertices)
        throw std::invalid_argument("config: all caps must be positive");
}

FieldPtr ExperimentConfig::make_field() const {
    if (q > 0 && modulus.empty()) return FieldSpec::make_q(q);
    int pp = p > 0 ? p : 2;
    int nn = n > 0 ? n : 1;
    if (!modulus.empty()) return FieldSpec::make(pp, nn, modulus);
    return FieldSpec::make(pp, nn);
}

void ExperimentConfig::validate() const {
    static const std::vector<std::string> kinds{"verify",     "ls-ratio", "ls-scan", "ls-mult",
                                                "audit",      "montgomery", "pset",  "sqfree",
                                                "shifted",    "trajectory", "pnt"};
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
        throw std::invalid_argument("config: unknown kind '" + kind + "'");
    caps.validate();
    if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    if (q <= 0 && p <= 0) throw std::invalid_argument("config: give q or (p, n)");
    if (mode != "eigen" && mode != "random-coeffs")
        throw std::invalid_argument("config: mode must be eigen or random-coeffs");
    if (kind == "ls-ratio" && moduli.empty())
        throw std::invalid_argument("config: ls-ratio needs a moduli list");
    if ((kind == "ls-ratio" || kind == "ls-mult" || kind == "montgomery" || kind == "sqfree" ||
         kind == "pset" || kind == "shifted") &&
        N < 0)
        throw std::invalid_argument("config: kind '" + kind + "' needs N");
    if (kind == "trajectory" && N_list.empty())
        throw std::invalid_argument("config: trajectory needs N_list");
    if (kind == "trajectory" || kind == "shifted") {
        if (problem != "pset" && problem != "sqfree-sum" && problem != "shifted-product")
            throw std::invalid_argument("config: problem must be pset | sqfree-sum | shifted-product");
    }
    if (kind == "pset" && family_f.empty())
        throw std::invalid_argument("config: pset needs family_f (the P-set)");
    if (kind == "montgomery" && moduli.empty())
        throw std::invalid_argument("config: montgomery needs moduli (the prime set)");
}

ExperimentConfig config_from_kv(const std::map<std::string, std::string>& kv) {
    ExperimentConfig cfg;
    cfg.caps.apply_env_override();
    for (const auto& [key, value] : kv) {
        if (key == "kind") cfg.kind = value;
        else if (key == "p") cfg.p = static_cast<int>(to_int(value, key));
        else if (key == "n") cfg.n = static_cast<int>(to_int(value, key));
        else if (key == "q") cfg.q = static_cast<int>(to_int(value, key));
        else if (key == "modulus") {
            for (const std::string& c : split(value, ','))
                cfg.modulus.push_back(static_cast<int>(to_int(c, key)));
        } else if (key == "N") cfg.N = static_cast<int>(to_int(value, key));
        else if (key == "Q") cfg.Q = static_cast<int>(to_int(value, key));
        else if (key == "N_list") {
            for (const std::string& c : split(value, ','))
                cfg.N_list.push_back(static_cast<int>(to_int(c, key)));
        } else if (key == "max_deg") cfg.max_deg = static_cast<int>(to_int(value, key));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(value, key));
        else if (key == "workers") cfg.workers = static_cast<int>(to_int(value, key));
        else if (key == "out") cfg.out_dir = value;
        else if (key == "epsilon") cfg.epsilon = std::stod(value);
        else if (key == "flag") cfg.flag = (value == "true" || value == "1" || value == "yes");
        else if (key == "mode") cfg.mode = value;
        else if (key == "problem") cfg.problem = value;
        else if (key == "samples") cfg.samples = static_cast<int>(to_int(value, key));
        else if (key == "family_size") cfg.family_size = static_cast<int>(to_int(value, key));
        else if (key == "moduli") cfg.moduli = split(value, ',');
        else if (key == "family_f") cfg.family_f = split(value, ',');
        else if (key == "family_g") cfg.family_g = split(value, ',');
        else if (key.rfind("cap_", 0) == 0) {
            long long v = to_int(value, key);
            if (v <= 0) throw std::invalid_argument("config: caps must be positive");
            auto s = static_cast<std::size_t>(v);
            std::string c = key.substr(4);
            if (c == "enumeration") cfg.caps.enumeration = s;
            else if (c == "unit_group") cfg.caps.unit_group = s;
            else if (c == "matrix_dim") cfg.caps.matrix_dim = s;
            else if (c == "clique_vertices") cfg.caps.clique_vertices = s;
            else if (c == "subset_products") cfg.caps.subset_products = s;
            else if (c == "pset_candidates") cfg.caps.pset_candidates = s;
            else if (c == "biclique_vertices") cfg.caps.biclique_vertices = s;
            else throw std::invalid_argument("config: unknown cap key '" + key + "'");
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config: expected key = value: " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return config_from_kv(kv);
}

Poly parse_poly(const FieldPtr& spec, const std::string& text) {
    // grammar: term ('+' term)*; term := coeff | coeff '*' t ['^' k] | t ['^' k]
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("parse_poly: empty string");
    std::vector<int> coeffs;
    auto bump = [&](int deg, int c) {
        if (deg >= static_cast<int>(coeffs.size())) coeffs.resize(deg + 1, 0);
        coeffs[deg] = spec->add(coeffs[deg], c % spec->q());
    };
    for (const std::string& term : split(s, '+')) {
        if (term.empty()) throw std::invalid_argument("parse_poly: empty term in " + text);
        int coeff = 1;
        int deg = 0;
        std::string rest = term;
        auto star = rest.find('*');
        if (star != std::string::npos) {
            coeff = static_cast<int>(to_int(rest.substr(0, star), "poly coefficient"));
            rest = rest.substr(star + 1);
        }
        if (!rest.empty() && rest[0] == 't') {
            deg = 1;
            if (rest.size() > 1) {
                if (rest[1] != '^') throw std::invalid_argument("parse_poly: bad term " + term);
                deg = static_cast<int>(to_int(rest.substr(2), "poly exponent"));
            }
        } else if (star == std::string::npos) {
            coeff = static_cast<int>(to_int(rest, "poly constant"));
            deg = 0;
        } else {
            throw std::invalid_argument("parse_poly: bad term " + term);
        }
        if (coeff < 0 || coeff >= spec->q())
            throw std::invalid_argument("parse_poly: coefficient index out of range in " + term);
        bump(deg, coeff);
    }
    return Poly(spec, coeffs);
}

std::vector<Poly> parse_poly_list(const FieldPtr& spec, const std::vector<std::string>& texts) {
    std::vector<Poly> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(parse_poly(spec, t));
    return out;
}

} // namespace qtsieve
