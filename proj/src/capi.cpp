#include "epco/capi.h"

#include "epco/systemspec.hpp"
#include "epco/toeplitz.hpp"

#include <json.hpp>

#include <cstring>
#include <random>

using nlohmann::json;

struct epc_system {
    epco::LoadedSystem loaded;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(char** out_json, const json& j) {
    if (out_json) *out_json = dup_string(j.dump(2));
}

/// Runs `body` (which returns the status) and converts exceptions to status 2.
template <typename F>
int guarded(char** out_json, F&& body) {
    if (out_json) *out_json = nullptr;
    try {
        return body();
    } catch (const std::exception& e) {
        emit(out_json, json{{"error", e.what()}});
        return 2;
    }
}

json system_summary(const epco::LoadedSystem& ls) {
    const auto& sys = ls.system;
    json j{{"group", sys.group()->describe()},
           {"target", sys.phi.target()->describe()},
           {"vertices", sys.graph()->vertex_count()},
           {"edges", sys.graph()->edge_count()}};
    if (ls.epk) j["builder"] = {{"name", "epk"}, {"a", ls.epk->a}, {"b", ls.epk->b}};
    return j;
}

json witness_json(const epco::CohomologyWitness& w) {
    json psi = json::array();
    for (const auto& g : w.psi) psi.push_back(g.str());
    return psi;
}

} // namespace

extern "C" {

int epc_system_from_toml(const char* toml_text, epc_system** out_system, char** out_json) {
    return guarded(out_json, [&]() -> int {
        epco::require(toml_text != nullptr && out_system != nullptr,
                      "null argument to epc_system_from_toml");
        auto* sys = new epc_system{epco::load_system_toml(toml_text)};
        *out_system = sys;
        emit(out_json, json{{"command", "load"}, {"system", system_summary(sys->loaded)}});
        return 0;
    });
}

void epc_system_free(epc_system* sys) { delete sys; }

void epc_string_free(char* s) { std::free(s); }

int epc_system_to_toml(const epc_system* sys, char** out_json) {
    return guarded(out_json, [&]() -> int {
        epco::require(sys != nullptr, "null system");
        if (out_json) *out_json = dup_string(epco::system_to_toml(sys->loaded.system));
        return 0;
    });
}

int epc_validate(const epc_system* sys, int strong, char** out_json) {
    return guarded(out_json, [&]() -> int {
        epco::require(sys != nullptr, "null system");
        const auto& s = sys->loaded.system;
        auto action_rep = s.action.validate();
        auto cocycle_rep = epco::validate_graph_cocycle(s.action, s.phi, strong != 0);
        bool pass = action_rep.valid && cocycle_rep.valid;
        json violations = json::array();
        for (const auto& v : action_rep.violations) violations.push_back(v);
        for (const auto& v : cocycle_rep.violations) violations.push_back(v);
        emit(out_json, json{{"command", "validate"},
                            {"system", system_summary(sys->loaded)},
                            {"strong", strong != 0},
                            {"pass", pass},
                            {"violations", violations}});
        return pass ? 0 : 1;
    });
}

int epc_classify(const epc_system* sys, char** out_json) {
    return guarded(out_json, [&]() -> int {
        epco::require(sys != nullptr, "null system");
        const auto& s = sys->loaded.system;
        json j{{"command", "classify"}, {"system", system_summary(sys->loaded)}};

        json orbits = json::array();
        for (const auto& orb : s.phi.action().orbits()) {
            json o = json::array();
            for (int x : orb) o.push_back(x);
            orbits.push_back(o);
        }
        j["edge_orbits"] = orbits;
        j["transitive_on_edges"] = s.phi.action().transitive();

        try {
            j["signature"] = s.phi.signature().str();
        } catch (const epco::error& e) {
            j["signature_unavailable"] = e.what();
        }
        if (sys->loaded.epk) {
            const auto& p = *sys->loaded.epk;
            j["epk"] = {{"a", p.a}, {"b", p.b}, {"q", p.q},  {"r", p.r},
                        {"c", p.c}, {"d", p.d}, {"a1", p.a1}, {"b1", p.b1}};
        }
        emit(out_json, j);
        return 0;
    });
}

int epc_decompose(const epc_system* sys, char** out_json) {
    return guarded(out_json, [&]() -> int {
        epco::require(sys != nullptr, "null system");
        epco::require(sys->loaded.epk.has_value(),
                      "decompose needs a system built with [construct] builder = \"epk\"");
        const auto& p = *sys->loaded.epk;
        auto dec = epco::epk_decompose(p.a, p.b);
        json orbits = json::array();
        bool all_verified = true;
        for (const auto& orb : dec.orbits) {
            bool ok = epco::verify_cohomologous(epco::transport(dec.target, orb.conj.theta),
                                                orb.restricted, orb.conj.psi);
            all_verified = all_verified && ok;
            json theta = json::array();
            for (int t : orb.conj.theta) theta.push_back(t);
            orbits.push_back({{"points", orb.points},
                              {"signature", orb.restricted.signature().str()},
                              {"theta", theta},
                              {"psi", witness_json(orb.conj.psi)},
                              {"verified", ok}});
        }
        emit(out_json, json{{"command", "decompose"},
                            {"system", system_summary(sys->loaded)},
                            {"d", dec.params.d},
                            {"component", {{"a", dec.params.a1}, {"b", dec.params.b1}}},
                            {"orbits", orbits},
                            {"pass", all_verified}});
        return all_verified ? 0 : 1;
    });
}

int epc_extend(const epc_system* sys, int max_length, char** out_json) {
    return guarded(out_json, [&]() -> int {
        epco::require(sys != nullptr, "null system");
        epco::require(max_length >= 0 && max_length <= 12, "max_length must be in [0, 12]");
        const auto& s = sys->loaded.system;
        epco::PathExtension ext(s.action, s.phi, max_length);
        auto rep = ext.induced_cocycle().validate();
        emit(out_json, json{{"command", "extend"},
                            {"system", system_summary(sys->loaded)},
                            {"max_length", max_length},
                            {"paths", ext.paths().size()},
                            {"cocycle_identity", rep.valid},
                            {"violations", rep.violations}});
        return rep.valid ? 0 : 1;
    });
}

int epc_compare(const epc_system* a, const epc_system* b, long bound, char** out_json) {
    return guarded(out_json, [&]() -> int {
        epco::require(a != nullptr && b != nullptr, "null system");
        const auto& sa = a->loaded.system;
        const auto& sb = b->loaded.system;
        epco::require(sa.group()->same_as(*sb.group()), "systems have different groups");
        epco::require(sa.phi.target()->same_as(*sb.phi.target()),
                      "systems have different target groups");
        json j{{"command", "compare"},
               {"left", system_summary(a->loaded)},
               {"right", system_summary(b->loaded)},
               {"bound", bound}};

        bool integers = sa.group()->kind() == epco::Group::Kind::Integers;
        if (integers && sa.phi.action().transitive() && sb.phi.action().transitive()) {
            j["method"] = "transitive_conjugacy";
            if (auto conj = epco::transitive_conjugacy(sa.phi, sb.phi)) {
                json theta = json::array();
                for (int t : conj->theta) theta.push_back(t);
                j["conjugate"] = true;
                j["theta"] = theta;
                j["psi"] = witness_json(conj->psi);
                emit(out_json, j);
                return 0;
            }
            j["conjugate"] = false;
            j["reason"] = "invariants differ (set size or signature)";
            emit(out_json, j);
            return 1;
        }

        epco::require(sa.graph()->same_as(*sb.graph()),
                      "general comparison needs identical graphs");
        j["method"] = "brute_force";
        if (auto w = epco::brute_force_cohomologous(sa.phi, sb.phi, bound, &sa.action)) {
            j["conjugate"] = true;
            j["psi"] = witness_json(*w);
            emit(out_json, j);
            return 0;
        }
        j["conjugate"] = false;
        j["reason"] = "no witness within the search box (unknown beyond the bound)";
        emit(out_json, j);
        return 1;
    });
}

int epc_normalize(const epc_system* sys, const char* expression, char** out_json) {
    return guarded(out_json, [&]() -> int {
        epco::require(sys != nullptr && expression != nullptr, "null argument");
        const auto& s = sys->loaded.system;
        auto word = epco::parse_word(s, expression);
        auto nf = epco::normalize(s, word);
        json terms = json::array();
        for (const auto& [m, c] : nf.terms())
            terms.push_back({{"mu", m.mu.str()},
                             {"g", m.g.str()},
                             {"nu", m.nu.str()},
                             {"coefficient", c.str()}});
        emit(out_json, json{{"command", "normalize"},
                            {"system", system_summary(sys->loaded)},
                            {"input", epco::word_str(s, word)},
                            {"normal_form", nf.str()},
                            {"terms", terms},
                            {"zero", nf.is_zero()}});
        return 0;
    });
}

int epc_fock_check(const epc_system* sys, const char* expression, int max_path_length,
                   long ball_radius, int jobs, char** out_json) {
    return guarded(out_json, [&]() -> int {
        epco::require(sys != nullptr && expression != nullptr, "null argument");
        epco::require(max_path_length >= 0 && max_path_length <= 12,
                      "max_path_length must be in [0, 12]");
        epco::require(jobs >= 1 && jobs <= 64, "jobs must be in [1, 64]");
        const auto& s = sys->loaded.system;
        auto word = epco::parse_word(s, expression);
        bool pass = epco::fock_check(s, word, max_path_length, ball_radius, jobs);
        emit(out_json, json{{"command", "fock"},
                            {"system", system_summary(sys->loaded)},
                            {"input", epco::word_str(s, word)},
                            {"max_path_length", max_path_length},
                            {"ball_radius", ball_radius},
                            {"pass", pass}});
        return pass ? 0 : 1;
    });
}

int epc_check_matrices(const epc_system* sys, const char* family_json, const char* mode,
                       double tol, char** out_json) {
    return guarded(out_json, [&]() -> int {
        epco::require(sys != nullptr && family_json != nullptr && mode != nullptr,
                      "null argument");
        std::string m = mode;
        epco::RelationMode rm;
        if (m == "toeplitz")
            rm = epco::RelationMode::Toeplitz;
        else if (m == "ck")
            rm = epco::RelationMode::CuntzKrieger;
        else
            epco::fail("mode must be 'toeplitz' or 'ck'");
        const auto& s = sys->loaded.system;
        auto fam = epco::matrix_family_from_json(s, family_json);
        auto rep = epco::check_relations(s, fam, rm, tol);
        json devs = json::array();
        for (const auto& [name, d] : rep.deviations)
            devs.push_back({{"relation", name}, {"deviation", d}});
        emit(out_json, json{{"command", "checkmatrices"},
                            {"system", system_summary(sys->loaded)},
                            {"mode", m},
                            {"tol", tol},
                            {"dim", fam.dim},
                            {"pass", rep.pass},
                            {"max_deviation", rep.max_deviation},
                            {"worst", rep.worst},
                            {"relations", devs}});
        return rep.pass ? 0 : 1;
    });
}

int epc_selftest(const epc_system* sys, long ball_radius, int trials, unsigned seed,
                 char** out_json) {
    return guarded(out_json, [&]() -> int {
        epco::require(sys != nullptr, "null system");
        epco::require(trials >= 1 && trials <= 100000, "trials must be in [1, 100000]");
        const auto& s = sys->loaded.system;
        std::mt19937 rng(seed);
        auto ball = epco::group_ball(s.group(), ball_radius);
        json j{{"command", "selftest"},
               {"system", system_summary(sys->loaded)},
               {"seed", seed},
               {"trials", trials},
               {"ball_radius", ball_radius}};
        std::vector<std::string> failures;

        auto random_coeff = [&rng]() {
            static const epco::Coefficient pool[] = {
                epco::Coefficient(1), epco::Coefficient(-1), epco::Coefficient(2),
                epco::Coefficient::i(), {mpq_class(1, 2), 0}, {1, -1},
            };
            return pool[rng() % 6];
        };
        auto random_b = [&]() {
            epco::BElement out;
            int terms = 1 + static_cast<int>(rng() % 5);
            for (int t = 0; t < terms; ++t)
                out.sum.add(static_cast<int>(rng() % s.graph()->vertex_count()),
                            ball[rng() % ball.size()], random_coeff());
            return out;
        };
        auto random_y = [&]() {
            epco::YElement out;
            int terms = 1 + static_cast<int>(rng() % 5);
            for (int t = 0; t < terms; ++t)
                out.sum.add(static_cast<int>(rng() % s.graph()->edge_count()),
                            ball[rng() % ball.size()], random_coeff());
            return out;
        };

        // *-algebra and module axioms on random data
        for (int t = 0; t < trials; ++t) {
            auto x = random_b();
            auto y = random_b();
            auto z = random_b();
            auto xi = random_y();
            auto eta = random_y();
            if (!(b_multiply(s, b_multiply(s, x, y), z) ==
                  b_multiply(s, x, b_multiply(s, y, z))))
                failures.push_back("associativity (trial " + std::to_string(t) + ")");
            if (!(b_adjoint(s, b_multiply(s, x, y)) ==
                  b_multiply(s, b_adjoint(s, y), b_adjoint(s, x))))
                failures.push_back("involution (trial " + std::to_string(t) + ")");
            if (!(left_action(s, b_multiply(s, x, y), xi) ==
                  left_action(s, x, left_action(s, y, xi))))
                failures.push_back("left module (trial " + std::to_string(t) + ")");
            if (!(right_action(s, right_action(s, xi, x), y) ==
                  right_action(s, xi, b_multiply(s, x, y))))
                failures.push_back("right module (trial " + std::to_string(t) + ")");
            if (!(b_adjoint(s, inner_product(s, xi, eta)) == inner_product(s, eta, xi)))
                failures.push_back("inner adjoint (trial " + std::to_string(t) + ")");
            if (!(inner_product(s, xi, right_action(s, eta, x)) ==
                  b_multiply(s, inner_product(s, xi, eta), x)))
                failures.push_back("inner module (trial " + std::to_string(t) + ")");
        }

        // finite-rank decomposition against the left action
        auto [regular, sources] = s.graph()->classify_vertices();
        (void)sources;
        for (int v : regular)
            for (const auto& g : ball) {
                auto dec = epco::katsura_decomposition(s, v, g);
                for (int e = 0; e < s.graph()->edge_count(); ++e)
                    for (const auto& h : ball) {
                        epco::YElement total;
                        for (const auto& op : dec)
                            total = total + epco::rank_one_apply(s, op, epco::y_basis(e, h));
                        if (!(total ==
                              epco::left_action(s, epco::b_basis(v, g), epco::y_basis(e, h))))
                            failures.push_back("finite-rank identity at vertex " +
                                               s.graph()->vertex_name(v));
                    }
            }

        if (!epco::ep_isometry_check(s, ball_radius)) failures.push_back("model-map isometry");

        // randomized rewriting vs the Fock oracle
        int words = std::max(1, trials / 10);
        for (int t = 0; t < words; ++t) {
            epco::GeneratorWord w;
            int len = 1 + static_cast<int>(rng() % 5);
            for (int i = 0; i < len; ++i) {
                switch (rng() % 4) {
                    case 0:
                        w.push_back({epco::Token::Kind::P,
                                     static_cast<int>(rng() % s.graph()->vertex_count()),
                                     epco::GroupElement()});
                        break;
                    case 1:
                        w.push_back({epco::Token::Kind::S,
                                     static_cast<int>(rng() % s.graph()->edge_count()),
                                     epco::GroupElement()});
                        break;
                    case 2:
                        w.push_back({epco::Token::Kind::SStar,
                                     static_cast<int>(rng() % s.graph()->edge_count()),
                                     epco::GroupElement()});
                        break;
                    default:
                        w.push_back({epco::Token::Kind::U, -1, ball[rng() % ball.size()]});
                }
            }
            if (!epco::fock_check(s, w, 4, std::min(ball_radius, 2L)))
                failures.push_back("fock oracle: " + epco::word_str(s, w));
        }

        j["pass"] = failures.empty();
        j["failures"] = failures;
        emit(out_json, j);
        return failures.empty() ? 0 : 1;
    });
}

} // extern "C"
