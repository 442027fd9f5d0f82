// Command-line front end. Talks to the toolkit exclusively through the C API.
#include "epco/capi.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::RuntimeError("cannot open '" + path + "'", 2);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Output {
    bool json_only = false;

    // Prints the report and returns the status as the process exit code.
    int finish(int status, char* report) const {
        if (!json_only) {
            const char* headline = status == 0 ? "pass" : status == 1 ? "fail" : "error";
            std::cout << "status: " << headline << " (" << status << ")\n";
        }
        if (report) {
            std::cout << report << "\n";
            epc_string_free(report);
        }
        return status;
    }
};

// Loads a system spec or exits with the parse error (status 2).
epc_system* load_or_throw(const std::string& path) {
    epc_system* sys = nullptr;
    char* report = nullptr;
    int status = epc_system_from_toml(read_file(path).c_str(), &sys, &report);
    if (status != 0) {
        std::string msg = report ? report : "load failed";
        epc_string_free(report);
        throw CLI::RuntimeError(msg, status);
    }
    epc_string_free(report);
    return sys;
}

struct SystemGuard {
    epc_system* sys;
    explicit SystemGuard(const std::string& path) : sys(load_or_throw(path)) {}
    ~SystemGuard() { epc_system_free(sys); }
    SystemGuard(const SystemGuard&) = delete;
    SystemGuard& operator=(const SystemGuard&) = delete;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toolkit for group cocycles on directed graphs"};
    app.require_subcommand(1);

    Output out;
    std::string spec_path, spec_path_b, expression, matrix_path;
    std::string mode = "toeplitz";
    bool strong = false;
    int max_length = 4, jobs = 1, trials = 50;
    long ball = 3, bound = 4;
    double tol = 1e-9;
    unsigned seed = 20240915;
    int exit_code = 2;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("spec", spec_path, "system definition (TOML)")->required();
        cmd->add_flag("--json", out.json_only, "print only the JSON report");
        return cmd;
    };

    auto* validate = add_common(app.add_subcommand("validate", "check the cocycle laws"));
    validate->add_flag("--strong", strong, "also require the strong vertex condition");
    validate->callback([&] {
        SystemGuard g(spec_path);
        char* rep = nullptr;
        int status = epc_validate(g.sys, strong ? 1 : 0, &rep);
        exit_code = out.finish(status, rep);
    });

    auto* classify = add_common(app.add_subcommand("classify", "invariants and orbits"));
    classify->callback([&] {
        SystemGuard g(spec_path);
        char* rep = nullptr;
        int status = epc_classify(g.sys, &rep);
        exit_code = out.finish(status, rep);
    });

    auto* decompose =
        add_common(app.add_subcommand("decompose", "orbit decomposition of an EPK system"));
    decompose->callback([&] {
        SystemGuard g(spec_path);
        char* rep = nullptr;
        int status = epc_decompose(g.sys, &rep);
        exit_code = out.finish(status, rep);
    });

    auto* extend =
        add_common(app.add_subcommand("extend", "validate the path-extended cocycle"));
    extend->add_option("--max-length", max_length, "longest path to materialize");
    extend->callback([&] {
        SystemGuard g(spec_path);
        char* rep = nullptr;
        int status = epc_extend(g.sys, max_length, &rep);
        exit_code = out.finish(status, rep);
    });

    auto* compare =
        add_common(app.add_subcommand("compare", "decide cohomology conjugacy"));
    compare->add_option("spec_b", spec_path_b, "second system definition")->required();
    compare->add_option("--bound", bound, "witness search box for brute force");
    compare->callback([&] {
        SystemGuard a(spec_path);
        SystemGuard b(spec_path_b);
        char* rep = nullptr;
        int status = epc_compare(a.sys, b.sys, bound, &rep);
        exit_code = out.finish(status, rep);
    });

    auto* normalize =
        add_common(app.add_subcommand("normalize", "normal form of a generator word"));
    normalize->add_option("expression", expression, "word like \"u(1) s(e0)\"")->required();
    normalize->callback([&] {
        SystemGuard g(spec_path);
        char* rep = nullptr;
        int status = epc_normalize(g.sys, expression.c_str(), &rep);
        exit_code = out.finish(status, rep);
    });

    auto* fock = add_common(app.add_subcommand("fock", "check a word against the Fock oracle"));
    fock->add_option("expression", expression, "word like \"u(1) s(e0)\"")->required();
    fock->add_option("-L,--max-path-length", max_length, "basis path length cutoff");
    fock->add_option("--ball", ball, "group ball radius for basis vectors");
    fock->add_option("--jobs", jobs, "worker threads");
    fock->callback([&] {
        SystemGuard g(spec_path);
        char* rep = nullptr;
        int status = epc_fock_check(g.sys, expression.c_str(), max_length, ball, jobs, &rep);
        exit_code = out.finish(status, rep);
    });

    auto* checkm =
        add_common(app.add_subcommand("checkmatrices", "check a matrix family's relations"));
    checkm->add_option("family", matrix_path, "JSON file with the P/S/U matrices")->required();
    checkm->add_option("--mode", mode, "toeplitz or ck");
    checkm->add_option("--tol", tol, "numerical tolerance");
    checkm->callback([&] {
        SystemGuard g(spec_path);
        char* rep = nullptr;
        int status =
            epc_check_matrices(g.sys, read_file(matrix_path).c_str(), mode.c_str(), tol, &rep);
        exit_code = out.finish(status, rep);
    });

    auto* selftest =
        add_common(app.add_subcommand("selftest", "seeded axiom and oracle suites"));
    selftest->add_option("--ball", ball, "group ball radius");
    selftest->add_option("--trials", trials, "random trials");
    selftest->add_option("--seed", seed, "RNG seed");
    selftest->callback([&] {
        SystemGuard g(spec_path);
        char* rep = nullptr;
        int status = epc_selftest(g.sys, ball, trials, seed, &rep);
        exit_code = out.finish(status, rep);
    });

    auto* build = add_common(app.add_subcommand("build", "emit the explicit TOML schema"));
    build->callback([&] {
        SystemGuard g(spec_path);
        char* toml = nullptr;
        int status = epc_system_to_toml(g.sys, &toml);
        if (toml) {
            std::cout << toml;
            epc_string_free(toml);
        }
        exit_code = status;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::RuntimeError& e) {
        std::cerr << e.what() << "\n";
        return e.get_exit_code();
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return exit_code;
}
