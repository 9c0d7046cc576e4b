// Command-line driver: ring configuration loading, single computations
// (ghost, dwork, norm, chern, li1) and full verification sweeps with JSON
// reports.  Exit codes: 0 all pass, 1 verification failure, 2 bad
// configuration or arguments.

#include "qcyc/suites.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <memory>

using nlohmann::ordered_json;
using namespace qcyc;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::unique_ptr<NumberRing>>& ring_store() {
    static std::vector<std::unique_ptr<NumberRing>> store;
    return store;
}

const NumberRing& cyclotomic_number_ring(long g) {
    std::string s = std::to_string(g);
    ring_store().push_back(
        std::make_unique<NumberRing>(cyclotomic_poly(g), g, "Z[zeta" + s + "][1/" + s + "]"));
    return *ring_store().back();
}

const NumberRing& half_integer_ring() {
    ring_store().push_back(
        std::make_unique<NumberRing>(QPoly({Rat(0), Rat(1)}), 2, "Z[1/2]"));
    return *ring_store().back();
}

// ---------------------------------------------------------------------------
// canonical JSON rendering: rationals "num/den", coefficient arrays lowest
// first, tuples keyed by decimal divisor strings

ordered_json rat_json(const Rat& r) { return rat_to_string(r); }

ordered_json relement_json(const RElement& a) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : a.val.c) arr.push_back(rat_json(c));
    return arr;
}

std::string relement_render(const RElement& a) {
    if (a.val.c.empty()) return "0";
    if (a.val.degree() == 0) return rat_to_string(a.val.c[0]);
    return poly_to_string(a.val);
}

ordered_json component_json(const ComponentElement& c) {
    ordered_json arr = ordered_json::array();
    for (const auto& coeff : c.value.c) arr.push_back(relement_json(coeff));
    return arr;
}

template <class Map>
ordered_json tuple_json(const Map& components) {
    ordered_json obj = ordered_json::object();
    for (const auto& [e, v] : components) obj[std::to_string(e)] = component_json(v);
    return obj;
}

ordered_json report_json(const VerificationReport& r) {
    ordered_json j;
    j["suite"] = r.suite;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["status"] = r.pass ? "pass" : "fail";
    if (!r.pass) j["witness"] = r.witness;
    j["millis"] = r.millis;
    return j;
}

void write_json_file(const std::string& path, const ordered_json& j) {
    std::string text = j.dump(2) + "\n";
    // the serialization must round trip byte-identically
    if (ordered_json::parse(text).dump(2) + "\n" != text)
        throw std::runtime_error("JSON canonical form does not round trip");
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write JSON report to " + path);
    out << text;
}

void emit(const ordered_json& j, const std::string& json_path) {
    std::cout << j.dump(2) << "\n";
    if (!json_path.empty()) write_json_file(json_path, j);
}

// ---------------------------------------------------------------------------
// run configuration

struct RunConfig {
    const NumberRing* ring = nullptr;
    std::vector<long> levels;
    std::vector<long> divisors;
    std::vector<std::pair<long, long>> zetas;  // (order, exponent)
    std::vector<std::string> suites;
    int jobs = 0;
};

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const std::exception& err) {
        throw ConfigError("config parse error in " + path + ": " + err.what());
    }
    RunConfig cfg;
    if (!j.contains("f") || !j["f"].is_array() || j["f"].empty())
        throw ConfigError("config field 'f': nonempty integer coefficient list required");
    std::vector<Rat> coeffs;
    for (const auto& v : j["f"]) {
        if (!v.is_number_integer()) throw ConfigError("config field 'f': entries must be integers");
        coeffs.emplace_back(v.get<long>());
    }
    if (!j.contains("N") || !j["N"].is_number_integer() || j["N"].get<long>() < 1)
        throw ConfigError("config field 'N': positive integer required");
    long N = j["N"].get<long>();
    std::string label = j.value("label", "config ring");
    try {
        ring_store().push_back(std::make_unique<NumberRing>(QPoly(coeffs), N, label));
    } catch (const std::exception& err) {
        throw ConfigError("config field 'f': " + std::string(err.what()));
    }
    cfg.ring = ring_store().back().get();
    for (const auto& v : j.value("levels", ordered_json::array())) {
        long m = v.get<long>();
        if (m < 1 || gcd_long(m, N) != 1)
            throw ConfigError("config field 'levels': level " + std::to_string(m) +
                              " shares a factor with N = " + std::to_string(N));
        cfg.levels.push_back(m);
    }
    for (const auto& v : j.value("divisors", ordered_json::array())) cfg.divisors.push_back(v.get<long>());
    for (const auto& z : j.value("zetas", ordered_json::array())) {
        long order = z.value("order", 0L), exponent = z.value("exponent", 1L);
        if (order < 1 || N % order != 0)
            throw ConfigError("config field 'zetas': order must divide N");
        cfg.zetas.emplace_back(order, exponent);
    }
    for (const auto& s : j.value("suites", ordered_json::array())) cfg.suites.push_back(s.get<std::string>());
    cfg.jobs = j.value("jobs", 0);
    return cfg;
}

std::pair<long, long> parse_zeta_spec(const std::string& spec) {
    long order = 0, exponent = 1;
    auto colon = spec.find(':');
    try {
        order = std::stol(spec.substr(0, colon));
        if (colon != std::string::npos) exponent = std::stol(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw ConfigError("bad --zeta specification: " + spec);
    }
    if (order < 2) throw ConfigError("--zeta order must be at least 2");
    if (gcd_long(exponent, order) != 1)
        throw ConfigError("--zeta exponent must be coprime to the order");
    return {order, exponent};
}

RootOfUnity make_root(long order, long exponent, bool adjoin_half) {
    if (order == 2) {
        if (!adjoin_half) throw ConfigError("zeta = -1 needs --adjoin-half (works over Z[1/2])");
        const NumberRing& R = half_integer_ring();
        return RootOfUnity(R, -RElement(1).promote(R), 2);
    }
    const NumberRing& R = cyclotomic_number_ring(order);
    return RootOfUnity(R, RElement::generator(R).pow(((exponent % order) + order) % order), order);
}

// the zeta = -1 variant of the main theorem sweep, behind --adjoin-half
VerificationReport run_adjoin_half(std::vector<long> ms, std::vector<long> ds) {
    if (ms.empty()) ms = {3, 5, 9};
    if (ds.empty()) ds = {2, 3};
    for (long m : ms)
        if (m % 2 == 0)
            throw ConfigError("--adjoin-half levels must be odd (coprime to N = 2)");
    return suites_detail::run_timed(
        "main-theorem-minus-one", {{"zeta", "-1 over Z[1/2]"}}, [&](suites_detail::Recorder& rec) {
            auto z = make_root(2, 1, true);
            for (long m : ms) {
                for (long d : ds) {
                    auto res = main_theorem_check(z, d, m);
                    rec.expect(res.pass, "m=" + std::to_string(m) + " d=" + std::to_string(d) +
                                             " e=" + std::to_string(res.witness_e));
                }
            }
        });
}

std::vector<RElement> parse_entries(const NumberRing& R, const std::vector<long>& values,
                                    long m, const char* what) {
    auto ds = divisors(m);
    if (values.size() != ds.size())
        throw ConfigError(std::string(what) + " needs " + std::to_string(ds.size()) +
                          " entries for level " + std::to_string(m));
    std::vector<RElement> out;
    for (long v : values) out.push_back(RElement(v).promote(R));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of q-Witt vector, truncated Habiro ring and q-polylogarithm identities"};
    app.require_subcommand(1);

    std::string config_path, json_path, zeta_spec;
    std::vector<std::string> suite_names;
    std::vector<long> m_list, d_list, witt_entries, ghost_entries;
    long m_value = 0, d_value = 0, mp_value = 0;
    int jobs = 0;
    bool adjoin_half = false;

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--config", config_path, "ring/run configuration file (JSON)");
    verify->add_option("--suite", suite_names, "suites to run (default: all)")->delimiter(',');
    verify->add_option("--m", m_list, "levels for the --adjoin-half sweep")->delimiter(',');
    verify->add_option("--d", d_list, "divisors for the --adjoin-half sweep")->delimiter(',');
    verify->add_option("--jobs", jobs, "number of worker threads");
    verify->add_option("--json", json_path, "write the JSON report here");
    verify->add_flag("--adjoin-half", adjoin_half, "also check zeta = -1 over Z[1/2]");

    auto* chern = app.add_subcommand("chern", "first Chern class cocycle of 1 - zeta");
    chern->add_option("--zeta", zeta_spec, "root of unity, order[:exponent]")->required();
    chern->add_option("--m", m_value, "truncation level")->required();
    chern->add_option("--d", d_value, "divisor d")->required();
    chern->add_option("--json", json_path, "write the JSON result here");
    chern->add_flag("--adjoin-half", adjoin_half, "allow zeta = -1 over Z[1/2]");

    auto* li1 = app.add_subcommand("li1", "first q-polylogarithm class of zeta");
    li1->add_option("--zeta", zeta_spec, "root of unity, order[:exponent]")->required();
    li1->add_option("--m", m_value, "truncation level")->required();
    li1->add_option("--d", d_value, "divisor d")->required();
    li1->add_option("--json", json_path, "write the JSON result here");
    li1->add_flag("--adjoin-half", adjoin_half, "allow zeta = -1 over Z[1/2]");

    auto* norm = app.add_subcommand("norm", "cyclotomic norm of a constant q-ghost tuple");
    norm->add_option("--config", config_path, "ring configuration file (JSON)");
    norm->add_option("--m", m_value, "source level")->required();
    norm->add_option("--mp", mp_value, "target level")->required();
    norm->add_option("--ghost", ghost_entries, "constant q-ghost entries, one per divisor of m")
        ->delimiter(',')->required();
    norm->add_option("--json", json_path, "write the JSON result here");

    auto* ghost_cmd = app.add_subcommand("ghost", "ghost coordinates of a Witt vector");
    ghost_cmd->add_option("--config", config_path, "ring configuration file (JSON)");
    ghost_cmd->add_option("--m", m_value, "truncation level")->required();
    ghost_cmd->add_option("--witt", witt_entries, "Witt coordinates, one per divisor of m")
        ->delimiter(',')->required();
    ghost_cmd->add_option("--json", json_path, "write the JSON result here");

    auto* dwork = app.add_subcommand("dwork", "Dwork congruence check of a ghost tuple");
    dwork->add_option("--config", config_path, "ring configuration file (JSON)");
    dwork->add_option("--m", m_value, "truncation level")->required();
    dwork->add_option("--ghost", ghost_entries, "ghost entries, one per divisor of m")
        ->delimiter(',')->required();
    dwork->add_option("--json", json_path, "write the JSON result here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        const NumberRing& base_ring = cfg.ring ? *cfg.ring : NumberRing::integers();

        if (verify->parsed()) {
            auto names = suite_names.empty() ? cfg.suites : suite_names;
            for (const auto& n : names) {
                bool known = false;
                for (const auto& s : all_suites()) known = known || n == s.name;
                if (!known) throw ConfigError("unknown suite: " + n);
            }
            int n_jobs = jobs > 0 ? jobs : (cfg.jobs > 0 ? cfg.jobs : 1);
            auto reports = run_suites(names, n_jobs);
            if (adjoin_half) reports.push_back(run_adjoin_half(m_list, d_list));
            bool all_pass = true;
            ordered_json out = ordered_json::array();
            for (const auto& r : reports) {
                all_pass = all_pass && r.pass;
                std::cout << (r.pass ? "PASS " : "FAIL ") << r.suite << " (" << r.millis
                          << " ms)" << (r.pass ? "" : "  witness: " + r.witness) << "\n";
                out.push_back(report_json(r));
            }
            if (!json_path.empty()) write_json_file(json_path, out);
            return all_pass ? 0 : 1;
        }

        if (chern->parsed() || li1->parsed()) {
            auto [order, exponent] = parse_zeta_spec(zeta_spec);
            if (m_value < 1 || gcd_long(m_value, order) != 1)
                throw ConfigError("level m must be positive and coprime to the order of zeta");
            if (d_value < 2) throw ConfigError("d must be at least 2");
            auto z = make_root(order, exponent, adjoin_half);
            ordered_json j;
            j["op"] = chern->parsed() ? "chern" : "li1";
            j["params"] = {{"zeta", zeta_spec}, {"m", m_value}, {"d", d_value}};
            if (chern->parsed()) {
                RElement u = RElement(1).promote(*z.ring) - z.zeta;
                auto c = chern_cocycle(u, m_value, d_value, canonical_unit_lift(z, m_value));
                j["value"] = tuple_json(c.value.components);
            } else {
                j["value"] = tuple_json(li1_class(z, d_value, m_value).components);
            }
            emit(j, json_path);
            return 0;
        }

        if (norm->parsed()) {
            if (mp_value % m_value != 0) throw ConfigError("--m must divide --mp");
            auto entries = parse_entries(base_ring, ghost_entries, m_value, "--ghost");
            QWittElement c{&base_ring, m_value, {}};
            auto ds = divisors(m_value);
            for (size_t i = 0; i < ds.size(); ++i)
                c.components.emplace(ds[i], ComponentElement::constant(base_ring, ds[i], 1, entries[i]));
            auto n = cyclotomic_norm(c, mp_value);
            ordered_json j;
            j["op"] = "norm";
            j["params"] = {{"m", m_value}, {"mp", mp_value}};
            j["value"] = tuple_json(n.components);
            emit(j, json_path);
            return 0;
        }

        if (ghost_cmd->parsed()) {
            auto entries = parse_entries(base_ring, witt_entries, m_value, "--witt");
            WittVector w{&base_ring, m_value, {}};
            auto ds = divisors(m_value);
            for (size_t i = 0; i < ds.size(); ++i) w.coords[ds[i]] = entries[i];
            auto g = ghost(w);
            std::string line = "[";
            ordered_json arr = ordered_json::array();
            for (size_t i = 0; i < ds.size(); ++i) {
                if (i) line += ", ";
                line += relement_render(g.coords.at(ds[i]));
                arr.push_back(relement_json(g.coords.at(ds[i])));
            }
            line += "]";
            std::cout << line << "\n";
            if (!json_path.empty()) {
                ordered_json j;
                j["op"] = "ghost";
                j["params"] = {{"m", m_value}};
                j["value"] = arr;
                write_json_file(json_path, j);
            }
            return 0;
        }

        if (dwork->parsed()) {
            auto entries = parse_entries(base_ring, ghost_entries, m_value, "--ghost");
            GhostTuple g{&base_ring, m_value, {}};
            auto ds = divisors(m_value);
            for (size_t i = 0; i < ds.size(); ++i) g.coords[ds[i]] = entries[i];
            bool ok = dwork_check(g);
            std::cout << (ok ? "true" : "false") << "\n";
            if (!json_path.empty()) {
                ordered_json j;
                j["op"] = "dwork";
                j["params"] = {{"m", m_value}};
                j["value"] = ok;
                write_json_file(json_path, j);
            }
            return 0;
        }
    } catch (const ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
