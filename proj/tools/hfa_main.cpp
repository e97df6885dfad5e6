// Command-line front end: verify residual suites, evaluate Chern numbers,
// sweep the fractional-vortex family, and re-check written reports.
// Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 quadrature
// non-convergence.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hfa/errors.hpp"
#include "hfa/report.hpp"

namespace {

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hfa::SpecError("usage: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

hfa::SuperPotential load_potential(const std::string& shorthand, const std::string& spec_file) {
    if (!spec_file.empty()) return hfa::potential_from_json(slurp(spec_file));
    if (shorthand.empty()) throw hfa::SpecError("usage: give --potential or --spec-file");
    return hfa::potential_from_shorthand(shorthand);
}

void print_report(const hfa::RunReport& r) {
    std::cout << "potential: " << r.potential << "\n";
    for (const auto& s : r.residuals)
        std::cout << "  residual " << s.name << ": max=" << s.max << " mean=" << s.mean
                  << " n=" << s.count << " tol=" << s.tol << (s.pass ? "  [ok]" : "  [FAIL]")
                  << "\n";
    for (const auto& s : r.integrals) {
        std::cout << "  " << s.name << " = " << s.value << " +- " << s.error;
        if (s.expected) std::cout << " (expected " << *s.expected << ", tol " << s.tol << ")";
        std::cout << (s.pass ? "  [ok]" : "  [FAIL]") << "\n";
    }
    std::cout << "verdict: " << (r.pass ? "pass" : "FAIL") << "\n";
}

void maybe_write_json(const hfa::RunReport& r, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw hfa::SpecError("usage: cannot write " + path);
    out << r.to_json() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"connections from harmonic super-potentials: residual checks, "
                 "characteristic classes, family sweeps"};
    app.require_subcommand(1);

    // verify ----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "evaluate the governing equations on a grid");
    std::string v_pot, v_spec, v_duality, v_kind, v_json;
    hfa::VerifyOptions vopt;
    verify->add_option("--potential", v_pot, "potential shorthand");
    verify->add_option("--spec-file", v_spec, "JSON potential descriptor file");
    verify->add_option("--duality", v_duality, "4D ansatz: sd or asd")
        ->check(CLI::IsMember({"sd", "asd"}));
    verify->add_option("--kind", v_kind, "2D ansatz: vortex or antivortex")
        ->check(CLI::IsMember({"vortex", "antivortex"}));
    verify->add_option("--grid", vopt.grid, "number of evaluation points");
    verify->add_option("--tol-residual", vopt.tol_residual, "4D residual tolerance");
    verify->add_option("--tol-identity", vopt.tol_identity, "4D trace-identity tolerance");
    verify->add_option("--tol-vortex", vopt.tol_vortex, "2D residual tolerance");
    verify->add_option("--json", v_json, "write the report here");

    // chern -----------------------------------------------------------------
    auto* chern = app.add_subcommand("chern", "integrate a characteristic class");
    std::string c_pot, c_spec, c_duality = "sd", c_json, c_csv;
    hfa::ChernOptions copt;
    double c_expected = 0.0;
    chern->add_option("--potential", c_pot, "potential shorthand");
    chern->add_option("--spec-file", c_spec, "JSON potential descriptor file");
    chern->add_option("--which", copt.which, "c1 or c2")
        ->required()
        ->check(CLI::IsMember({"c1", "c2"}));
    chern->add_option("--duality", c_duality, "4D ansatz for c2")
        ->check(CLI::IsMember({"sd", "asd"}));
    auto* c_exp_opt = chern->add_option("--expected", c_expected, "judge the value against this");
    chern->add_option("--tol", copt.tol, "tolerance for --expected");
    chern->add_option("--quad-tol", copt.quad.tol, "quadrature convergence target");
    chern->add_option("--workers", copt.quad.workers, "worker cap (0 = HFA_WORKERS or all cores)");
    chern->add_option("--csv", c_csv, "append a CSV row here");
    chern->add_option("--json", c_json, "write the report here");

    // sweep -----------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "sweep the fractional family over exponents");
    hfa::SweepOptions sopt;
    std::string s_out, s_json;
    sweep->add_option("--c-list", sopt.cs, "exponents")->required()->delimiter(',');
    sweep->add_option("--radii", sopt.radii, "loop radii")->delimiter(',');
    sweep->add_option("--out", s_out, "CSV output path")->required();
    sweep->add_option("--tol-c1", sopt.tol_c1, "tolerance on c1 vs c-1");
    sweep->add_option("--tol-hol", sopt.tol_hol, "holonomy-vs-limit bound at the final radius");
    sweep->add_option("--quad-tol", sopt.quad.tol, "quadrature convergence target");
    sweep->add_option("--workers", sopt.quad.workers, "worker cap (0 = HFA_WORKERS or all cores)");
    sweep->add_option("--json", s_json, "write the report here");

    // report-check ----------------------------------------------------------
    auto* check = app.add_subcommand("report-check", "re-derive a written report's verdict");
    std::string k_path;
    check->add_option("file", k_path, "report JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << "usage error: " << e.what() << "\n";
        std::cout << app.help() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) {
            if (!v_duality.empty()) vopt.duality = v_duality == "sd" ? hfa::Duality::SD : hfa::Duality::ASD;
            if (!v_kind.empty())
                vopt.kind = v_kind == "vortex" ? hfa::VortexKind::VORTEX : hfa::VortexKind::ANTIVORTEX;
            hfa::RunReport r = hfa::run_verify(load_potential(v_pot, v_spec), vopt);
            r.command = join_args(argc, argv);
            print_report(r);
            maybe_write_json(r, v_json);
            return r.pass ? 0 : 1;
        }
        if (chern->parsed()) {
            copt.duality = c_duality == "asd" ? hfa::Duality::ASD : hfa::Duality::SD;
            if (c_exp_opt->count() > 0) copt.expected = c_expected;
            hfa::RunReport r = hfa::run_chern(load_potential(c_pot, c_spec), copt);
            r.command = join_args(argc, argv);
            print_report(r);
            maybe_write_json(r, c_json);
            if (!c_csv.empty()) {
                std::ofstream out(c_csv, std::ios::app);
                if (!out) throw hfa::SpecError("usage: cannot write " + c_csv);
                hfa::chern_csv(out, r);
            }
            return r.pass ? 0 : 1;
        }
        if (sweep->parsed()) {
            std::ofstream out(s_out);
            if (!out) throw hfa::SpecError("usage: cannot write " + s_out);
            hfa::RunReport r = hfa::run_sweep(sopt, out);
            r.command = join_args(argc, argv);
            print_report(r);
            maybe_write_json(r, s_json);
            std::cout << "csv: " << s_out << "\n";
            return r.pass ? 0 : 1;
        }
        if (check->parsed()) {
            hfa::RunReport r = hfa::RunReport::from_json(slurp(k_path));
            std::string why;
            if (!hfa::report_consistent(r, &why)) {
                std::cout << "inconsistent report: " << why << "\n";
                return 2;
            }
            std::cout << "verdict: " << (r.pass ? "pass" : "FAIL") << "\n";
            return r.pass ? 0 : 1;
        }
    } catch (const hfa::QuadratureNotConverged& e) {
        std::cout << "quadrature did not converge: " << e.what() << "\n";
        return 3;
    } catch (const hfa::SpecError& e) {
        std::cout << e.what() << "\n";
        return 2;
    } catch (const hfa::Error& e) {
        std::cout << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
