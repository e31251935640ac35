#include "anisofem/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "anisofem/errors.hpp"

namespace anisofem {

namespace {

const std::set<std::string, std::less<>> kKnownKeys{
    "kind", "name", "schemes", "family", "case", "n", "regimes", "eps", "alpha", "sigma",
    "sigma_power", "sigma_fixed", "modes", "k", "condition", "flip_second_row", "timing",
    "allow_failures", "output"};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

double as_double(const toml::node& node, const std::string& where) {
    if (auto v = node.value<double>()) {
        return *v;
    }
    fail(where, "expected a number");
}

int as_int(const toml::node& node, const std::string& where) {
    if (auto v = node.value_exact<int64_t>()) {
        return static_cast<int>(*v);
    }
    fail(where, "expected an integer");
}

const toml::array& as_array(const toml::node& node, const std::string& where) {
    if (const auto* a = node.as_array()) {
        return *a;
    }
    fail(where, "expected an array");
}

std::vector<double> double_list(const toml::node& node, const std::string& where) {
    if (!node.is_array()) {
        return {as_double(node, where)};
    }
    std::vector<double> out;
    for (const auto& x : as_array(node, where)) {
        out.push_back(as_double(x, where));
    }
    return out;
}

std::vector<int> int_list(const toml::node& node, const std::string& where) {
    if (!node.is_array()) {
        return {as_int(node, where)};
    }
    std::vector<int> out;
    for (const auto& x : as_array(node, where)) {
        out.push_back(as_int(x, where));
    }
    return out;
}

std::string as_string(const toml::node& node, const std::string& where) {
    if (auto v = node.value<std::string>()) {
        return *v;
    }
    fail(where, "expected a string");
}

bool as_bool(const toml::node& node, const std::string& where) {
    if (auto v = node.value<bool>()) {
        return *v;
    }
    fail(where, "expected true or false");
}

StudyConfig parse_study(const toml::table& t, const std::string& where) {
    const auto* kind_node = t.get("kind");
    if (kind_node == nullptr) {
        fail(where, "missing key 'kind'");
    }
    StudyConfig cfg = StudyConfig::defaults(parse_study_kind(as_string(*kind_node, where + ".kind")));
    cfg.name = to_string(cfg.kind);
    for (const auto& [key, node] : t) {
        if (kKnownKeys.count(key.str()) == 0) {
            fail(where, "unknown key '" + std::string(key.str()) + "'");
        }
    }
    std::vector<double> eps_grid;
    std::vector<double> alpha_grid;
    for (const auto& [key_, node] : t) {
        const std::string key(key_.str());
        const std::string at = where + "." + key;
        if (key == "kind") {
            continue;
        } else if (key == "name") {
            cfg.name = as_string(node, at);
        } else if (key == "schemes") {
            cfg.schemes.clear();
            if (node.is_array()) {
                for (const auto& s : as_array(node, at)) {
                    cfg.schemes.push_back(parse_scheme(as_string(s, at)));
                }
            } else {
                cfg.schemes.push_back(parse_scheme(as_string(node, at)));
            }
        } else if (key == "family") {
            cfg.family = parse_family(as_string(node, at));
        } else if (key == "case") {
            cfg.case_id = parse_case_id(as_string(node, at));
        } else if (key == "n") {
            cfg.n = int_list(node, at);
        } else if (key == "regimes") {
            cfg.regimes.clear();
            for (const auto& r : as_array(node, at)) {
                const auto pair = double_list(r, at);
                if (pair.size() != 2) {
                    fail(at, "each regime is [eps, alpha]");
                }
                cfg.regimes.push_back({pair[0], pair[1]});
            }
        } else if (key == "eps") {
            eps_grid = double_list(node, at);
        } else if (key == "alpha") {
            alpha_grid = double_list(node, at);
        } else if (key == "sigma") {
            cfg.sigma = double_list(node, at);
        } else if (key == "sigma_power") {
            cfg.sigma_rule = {SigmaRule::Type::Power, 0.0, as_double(node, at)};
        } else if (key == "sigma_fixed") {
            cfg.sigma_rule = {SigmaRule::Type::Fixed, as_double(node, at), 0.0};
        } else if (key == "modes") {
            cfg.modes.clear();
            for (const auto& m : as_array(node, at)) {
                const auto& triple = as_array(m, at);
                if (triple.size() != 3) {
                    fail(at, "each mode is [k, l, f_kl]");
                }
                cfg.modes.push_back({as_int(*triple.get(0), at), as_int(*triple.get(1), at),
                                     as_double(*triple.get(2), at)});
            }
        } else if (key == "k") {
            cfg.k_values = int_list(node, at);
        } else if (key == "condition") {
            cfg.condition = as_bool(node, at);
        } else if (key == "flip_second_row") {
            cfg.flip_second_row = as_bool(node, at);
        } else if (key == "timing") {
            cfg.timing = as_bool(node, at);
        } else if (key == "allow_failures") {
            cfg.allow_failures = as_bool(node, at);
        } else if (key == "output") {
            cfg.output = as_string(node, at);
        }
    }
    if (!eps_grid.empty() || !alpha_grid.empty()) {
        if (t.contains("regimes")) {
            fail(where, "give either 'regimes' or 'eps'/'alpha', not both");
        }
        if (eps_grid.empty()) {
            for (const Regime& r : cfg.regimes) eps_grid.push_back(r.eps);
        }
        if (alpha_grid.empty()) {
            for (const Regime& r : cfg.regimes) alpha_grid.push_back(r.alpha);
        }
        // Remove duplicates left over from the defaults while keeping order.
        auto dedupe = [](std::vector<double>& v) {
            std::vector<double> out;
            for (double x : v) {
                if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
            }
            v = std::move(out);
        };
        dedupe(eps_grid);
        dedupe(alpha_grid);
        cfg.regimes.clear();
        for (double a : alpha_grid) {
            for (double e : eps_grid) {
                cfg.regimes.push_back({e, a});
            }
        }
    }
    if (cfg.n.empty()) fail(where, "'n' must not be empty");
    for (int n : cfg.n) {
        if (n < 1) fail(where, "'n' entries must be positive");
    }
    if (cfg.kind != StudyKind::InfsupProbe && cfg.kind != StudyKind::Remark3Check) {
        if (cfg.regimes.empty()) fail(where, "no (eps, alpha) regimes");
        if (cfg.kind != StudyKind::OracleValidation && cfg.schemes.empty()) {
            fail(where, "'schemes' must not be empty");
        }
    }
    if ((cfg.kind == StudyKind::SigmaSweep || cfg.kind == StudyKind::OracleValidation) &&
        cfg.sigma.empty()) {
        fail(where, "'sigma' must not be empty");
    }
    if (cfg.kind == StudyKind::Remark3Check && cfg.k_values.empty()) {
        fail(where, "'k' must not be empty");
    }
    if (cfg.kind == StudyKind::OracleValidation) {
        FourierRhs{cfg.modes}.validate();
        if (cfg.modes.empty()) fail(where, "'modes' must not be empty");
    }
    return cfg;
}

}  // namespace

std::vector<StudyConfig> parse_config(std::string_view text, std::string_view source_name) {
    toml::table root;
    try {
        root = toml::parse(text, source_name);
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << source_name << ":" << e.source().begin.line << ":" << e.source().begin.column
            << ": " << e.description();
        throw ConfigError(msg.str());
    }
    for (const auto& [key, node] : root) {
        if (key.str() != "study") {
            throw ConfigError(std::string(source_name) + ": unexpected top-level key '" +
                              std::string(key.str()) + "'");
        }
    }
    const auto* studies = root.get_as<toml::array>("study");
    if (studies == nullptr || !studies->is_array_of_tables()) {
        throw ConfigError(std::string(source_name) + ": expected one or more [[study]] tables");
    }
    std::vector<StudyConfig> out;
    int index = 0;
    for (const auto& node : *studies) {
        out.push_back(parse_study(*node.as_table(),
                                  std::string(source_name) + ": study[" + std::to_string(index++) + "]"));
    }
    return out;
}

std::vector<StudyConfig> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

}  // namespace anisofem
