// pbdm command line tool. Talks to the analysis library exclusively
// through the C API in pbdm.h; everything here is argument handling and
// rendering. Output is deterministic for identical arguments and seed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pbdm.h"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr std::uint64_t kDefaultMcSamples = 100000;

enum class Format { Table, Csv, Json };

struct CliError {
    int code;
    std::string message;
};

int status_exit_code(pbdm_status st) {
    return st == PBDM_ERR_INVALID_ARGUMENT ? 2 : 3;
}

void require_ok(pbdm_status st, const std::string& context) {
    if (st != PBDM_OK)
        throw CliError{status_exit_code(st), context + ": " + pbdm_status_message(st)};
}

struct StateHandle {
    pbdm_state* p = nullptr;
    ~StateHandle() { pbdm_state_free(p); }
    StateHandle() = default;
    StateHandle(const StateHandle&) = delete;
    StateHandle& operator=(const StateHandle&) = delete;
};

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_fixed(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string fmt_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

Format parse_format(const std::string& s) {
    if (s == "table") return Format::Table;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw CliError{2, "unknown format '" + s + "' (expected table, csv or json)"};
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw CliError{2, "cannot open output file '" + output_path + "'"};
    out << text;
    if (!out) throw CliError{2, "failed writing output file '" + output_path + "'"};
}

bool is_default_m1(double m1) { return std::abs(m1 - kInvSqrt2) <= 1e-12; }

// ------------------------------------------------------------------
// analyze
// ------------------------------------------------------------------

int cmd_analyze(double alpha, double m1, Format format, const std::string& output) {
    if (alpha == 0.0 || alpha == 1.0)
        std::cerr << "note: alpha=" << fmt_fixed(alpha)
                  << " is a boundary value; the output is a product state\n";

    StateHandle state;
    require_ok(pbdm_state_deletion(alpha, m1, &state.p), "analyze");
    pbdm_report rep{};
    require_ok(pbdm_analyze(state.p, &rep), "analyze");

    double w3c = 0.0, w4c = 0.0;
    require_ok(pbdm_closed_form_w(alpha, m1, &w3c, &w4c), "closed-form W");
    const double w3_delta = std::abs(rep.w3 - w3c);
    const double w4_delta = std::abs(rep.w4 - w4c);

    const bool u_check = is_default_m1(m1) && alpha > 0.0 && alpha < 1.0;
    double u_delta = 0.0;
    if (u_check) {
        double uc[3] = {0, 0, 0};
        require_ok(pbdm_closed_form_u(alpha, uc), "closed-form u");
        std::vector<double> sorted(uc, uc + 3);
        std::sort(sorted.begin(), sorted.end(), std::greater<double>());
        for (int i = 0; i < 3; ++i) u_delta = std::max(u_delta, std::abs(sorted[i] - rep.u[i]));
    }

    std::ostringstream os;
    if (format == Format::Table) {
        os << "deletion-machine output, alpha=" << fmt_fixed(alpha) << ", m1=" << fmt_fixed(m1)
           << "\n\n";
        os << "W3              " << fmt_fixed(rep.w3) << "\n";
        os << "W4              " << fmt_fixed(rep.w4) << "\n";
        os << "PPT spectrum    " << fmt_fixed(rep.ppt[0]) << "  " << fmt_fixed(rep.ppt[1]) << "  "
           << fmt_fixed(rep.ppt[2]) << "  " << fmt_fixed(rep.ppt[3]) << "\n";
        os << "u (descending)  " << fmt_fixed(rep.u[0]) << "  " << fmt_fixed(rep.u[1]) << "  "
           << fmt_fixed(rep.u[2]) << "\n";
        os << "M               " << fmt_fixed(rep.big_m) << "\n";
        os << "N               " << fmt_fixed(rep.big_n) << "\n";
        os << "F_max           " << fmt_fixed(rep.f_max) << "\n";
        os << "inseparable     " << (rep.inseparable ? "yes" : "no") << "\n";
        os << "Bell violated   " << (rep.bell_violated ? "yes" : "no") << "\n";
        os << "\nclosed-form cross-check deltas\n";
        os << "  W3            " << fmt_sci(w3_delta) << "\n";
        os << "  W4            " << fmt_sci(w4_delta) << "\n";
        if (u_check) os << "  u (max)       " << fmt_sci(u_delta) << "\n";
    } else if (format == Format::Csv) {
        os << "alpha,m1,w3,w4,ppt1,ppt2,ppt3,ppt4,u1,u2,u3,M,N,F_max,inseparable,bell_violated\n";
        os << fmt_full(alpha) << ',' << fmt_full(m1) << ',' << fmt_full(rep.w3) << ','
           << fmt_full(rep.w4) << ',' << fmt_full(rep.ppt[0]) << ',' << fmt_full(rep.ppt[1])
           << ',' << fmt_full(rep.ppt[2]) << ',' << fmt_full(rep.ppt[3]) << ','
           << fmt_full(rep.u[0]) << ',' << fmt_full(rep.u[1]) << ',' << fmt_full(rep.u[2]) << ','
           << fmt_full(rep.big_m) << ',' << fmt_full(rep.big_n) << ',' << fmt_full(rep.f_max)
           << ',' << rep.inseparable << ',' << rep.bell_violated << "\n";
    } else {
        ordered_json j;
        j["alpha"] = alpha;
        j["m1"] = m1;
        j["w3"] = rep.w3;
        j["w4"] = rep.w4;
        j["ppt_spectrum"] = {rep.ppt[0], rep.ppt[1], rep.ppt[2], rep.ppt[3]};
        j["u"] = {rep.u[0], rep.u[1], rep.u[2]};
        j["big_m"] = rep.big_m;
        j["big_n"] = rep.big_n;
        j["f_max"] = rep.f_max;
        j["inseparable"] = rep.inseparable != 0;
        j["bell_violated"] = rep.bell_violated != 0;
        ordered_json cc;
        cc["w3_delta"] = w3_delta;
        cc["w4_delta"] = w4_delta;
        if (u_check) cc["u_max_delta"] = u_delta;
        j["closed_form_check"] = cc;
        os << j.dump(2) << "\n";
    }
    emit(os.str(), output);
    return 0;
}

// ------------------------------------------------------------------
// sweep
// ------------------------------------------------------------------

struct SweepRow {
    double alpha = 0.0;
    pbdm_report rep{};
    bool has_mc = false;
    pbdm_teleport_result tel{};
};

int cmd_sweep(const std::string& range, double m1, std::uint64_t mc_samples, std::uint64_t seed,
              Format format, const std::string& output) {
    double start = 0, stop = 0, step = 0;
    if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3)
        throw CliError{2, "invalid --sweep '" + range + "' (expected START:STOP:STEP)"};
    if (!(start > 0.0 && start < 1.0 && stop > 0.0 && stop < 1.0 && step > 0.0 && step < 1.0))
        throw CliError{2, "sweep bounds and step must lie in (0,1)"};
    if (!(start < stop)) throw CliError{2, "sweep start must be below stop"};
    if (mc_samples > 0 && mc_samples < 100)
        throw CliError{2, "--mc-samples must be 0 (off) or at least 100"};

    std::vector<SweepRow> rows;
    for (std::size_t k = 0;; ++k) {
        const double alpha = start + static_cast<double>(k) * step;
        if (alpha > stop + step * 1e-9) break;
        SweepRow row;
        row.alpha = alpha;
        StateHandle state;
        require_ok(pbdm_state_deletion(alpha, m1, &state.p), "sweep");
        require_ok(pbdm_analyze(state.p, &row.rep), "sweep");
        if (mc_samples > 0) {
            row.has_mc = true;
            require_ok(pbdm_teleport_verify(state.p, mc_samples, seed,
                                            static_cast<std::uint64_t>(k) * PBDM_MC_SUBSTREAMS,
                                            &row.tel),
                       "sweep");
        }
        rows.push_back(row);
    }

    std::ostringstream os;
    if (format == Format::Csv) {
        os << "alpha,w3,w4,ppt_min,u1,u2,u3,M,N,F_max,F_mc,F_mc_stderr\n";
        for (const SweepRow& r : rows) {
            os << fmt_full(r.alpha) << ',' << fmt_full(r.rep.w3) << ',' << fmt_full(r.rep.w4)
               << ',' << fmt_full(r.rep.ppt[0]) << ',' << fmt_full(r.rep.u[0]) << ','
               << fmt_full(r.rep.u[1]) << ',' << fmt_full(r.rep.u[2]) << ','
               << fmt_full(r.rep.big_m) << ',' << fmt_full(r.rep.big_n) << ','
               << fmt_full(r.rep.f_max) << ',';
            if (r.has_mc)
                os << fmt_full(r.tel.mc_mean) << ',' << fmt_full(r.tel.mc_std_error);
            else
                os << ',';
            os << "\n";
        }
    } else if (format == Format::Table) {
        os << "alpha     w3        w4        ppt_min   u1        u2        u3        "
              "M         N         F_max";
        if (mc_samples > 0) os << "     F_mc      F_mc_stderr";
        os << "\n";
        for (const SweepRow& r : rows) {
            os << fmt_fixed(r.alpha) << "  " << fmt_fixed(r.rep.w3) << "  "
               << fmt_fixed(r.rep.w4) << "  " << fmt_fixed(r.rep.ppt[0]) << "  "
               << fmt_fixed(r.rep.u[0]) << "  " << fmt_fixed(r.rep.u[1]) << "  "
               << fmt_fixed(r.rep.u[2]) << "  " << fmt_fixed(r.rep.big_m) << "  "
               << fmt_fixed(r.rep.big_n) << "  " << fmt_fixed(r.rep.f_max);
            if (r.has_mc)
                os << "  " << fmt_fixed(r.tel.mc_mean) << "  " << fmt_sci(r.tel.mc_std_error);
            os << "\n";
        }
    } else {
        ordered_json arr = ordered_json::array();
        for (const SweepRow& r : rows) {
            ordered_json j;
            j["alpha"] = r.alpha;
            j["w3"] = r.rep.w3;
            j["w4"] = r.rep.w4;
            j["ppt_min"] = r.rep.ppt[0];
            j["u1"] = r.rep.u[0];
            j["u2"] = r.rep.u[1];
            j["u3"] = r.rep.u[2];
            j["big_m"] = r.rep.big_m;
            j["big_n"] = r.rep.big_n;
            j["f_max"] = r.rep.f_max;
            if (r.has_mc) {
                j["f_mc"] = r.tel.mc_mean;
                j["f_mc_stderr"] = r.tel.mc_std_error;
            }
            arr.push_back(j);
        }
        os << arr.dump(2) << "\n";
    }
    emit(os.str(), output);
    return 0;
}

// ------------------------------------------------------------------
// table1
// ------------------------------------------------------------------

int cmd_table1(Format format, const std::string& output) {
    pbdm_table1_row rows[PBDM_TABLE1_ROWS];
    require_ok(pbdm_table1_audit(rows), "table1");
    // rows hold alpha = 0.1 .. 0.9; indices 5 and 7 are 0.6 and 0.8
    const double gap = std::abs(rows[5].f_pipeline - rows[7].f_pipeline);

    std::ostringstream os;
    if (format == Format::Table) {
        os << "alpha  f_pipeline  f_table1_paper  delta      flag\n";
        for (const pbdm_table1_row& r : rows) {
            char alpha_buf[8];
            std::snprintf(alpha_buf, sizeof alpha_buf, "%.1f", r.alpha);
            os << alpha_buf << "    " << fmt_fixed(r.f_pipeline) << "    "
               << fmt_fixed(r.f_published) << "        " << fmt_fixed(r.delta) << "  "
               << (r.mismatch ? "MISMATCH" : "") << "\n";
        }
        os << "\nsymmetry check: |F(0.6) - F(0.8)| = " << fmt_sci(gap)
           << (gap <= 1e-10 ? " <= 1e-10" : " > 1e-10")
           << " (the pipeline preserves the alpha <-> sqrt(1-alpha^2) symmetry; "
              "the published column does not)\n";
    } else if (format == Format::Csv) {
        os << "alpha,f_pipeline,f_table1_paper,delta,flag\n";
        for (const pbdm_table1_row& r : rows)
            os << fmt_full(r.alpha) << ',' << fmt_full(r.f_pipeline) << ','
               << fmt_full(r.f_published) << ',' << fmt_full(r.delta) << ','
               << (r.mismatch ? "MISMATCH" : "") << "\n";
        std::cerr << "note: symmetry check |F(0.6) - F(0.8)| = " << fmt_sci(gap) << "\n";
    } else {
        ordered_json j;
        ordered_json arr = ordered_json::array();
        for (const pbdm_table1_row& r : rows) {
            ordered_json row;
            row["alpha"] = r.alpha;
            row["f_pipeline"] = r.f_pipeline;
            row["paper_table1_value"] = r.f_published;
            row["delta"] = r.delta;
            row["mismatch_flag"] = r.mismatch != 0;
            arr.push_back(row);
        }
        j["rows"] = arr;
        ordered_json sym;
        sym["f_alpha_0_6"] = rows[5].f_pipeline;
        sym["f_alpha_0_8"] = rows[7].f_pipeline;
        sym["gap"] = gap;
        j["symmetry"] = sym;
        os << j.dump(2) << "\n";
    }
    emit(os.str(), output);
    return 0;
}

// ------------------------------------------------------------------
// teleport
// ------------------------------------------------------------------

int cmd_teleport(bool have_alpha, double alpha, double m1, bool have_werner, double werner_p,
                 std::uint64_t mc_samples, std::uint64_t seed, Format format,
                 const std::string& output) {
    if (have_alpha == have_werner)
        throw CliError{2, "teleport needs exactly one state selector (--alpha or --werner)"};
    if (mc_samples < 100) throw CliError{2, "--mc-samples must be at least 100"};

    StateHandle state;
    std::string selector, selector_value;
    if (have_alpha) {
        require_ok(pbdm_state_deletion(alpha, m1, &state.p), "teleport");
        selector = "alpha";
        selector_value = fmt_full(alpha);
    } else {
        require_ok(pbdm_state_werner(werner_p, &state.p), "teleport");
        selector = "werner";
        selector_value = fmt_full(werner_p);
    }

    pbdm_teleport_result res{};
    require_ok(pbdm_teleport_verify(state.p, mc_samples, seed, 0, &res), "teleport");

    std::ostringstream os;
    if (format == Format::Table) {
        if (have_alpha)
            os << "shared state        deletion-machine output (alpha=" << fmt_fixed(alpha)
               << ", m1=" << fmt_fixed(m1) << ")\n";
        else
            os << "shared state        Werner state (p=" << fmt_fixed(werner_p) << ")\n";
        os << "F_max (formula)     " << fmt_fixed(res.formula) << "\n";
        os << "protocol prediction " << fmt_fixed(res.predicted) << "\n";
        os << "det(C)              " << fmt_fixed(res.det_c)
           << (res.det_branch_negative
                   ? "  [det <= 0: bound attainable by the rotated protocol]"
                   : "  [det > 0: bound may exceed this protocol family; comparing "
                     "against the prediction]")
           << "\n";
        os << "MC fidelity         " << fmt_fixed(res.mc_mean) << " +/- "
           << fmt_sci(res.mc_std_error) << "   (samples=" << res.samples << ", seed=" << res.seed
           << ")\n";
        os << "consistent          " << (res.consistent ? "yes" : "no") << "\n";
    } else if (format == Format::Csv) {
        os << "selector,value,m1,formula,predicted,det_c,branch_negative,mc_mean,"
              "mc_std_error,samples,seed,consistent\n";
        os << selector << ',' << selector_value << ',' << (have_alpha ? fmt_full(m1) : "") << ','
           << fmt_full(res.formula) << ',' << fmt_full(res.predicted) << ','
           << fmt_full(res.det_c) << ',' << res.det_branch_negative << ','
           << fmt_full(res.mc_mean) << ',' << fmt_full(res.mc_std_error) << ',' << res.samples
           << ',' << res.seed << ',' << res.consistent << "\n";
    } else {
        ordered_json j;
        ordered_json st;
        if (have_alpha) {
            st["kind"] = "deletion";
            st["alpha"] = alpha;
            st["m1"] = m1;
        } else {
            st["kind"] = "werner";
            st["p"] = werner_p;
        }
        j["state"] = st;
        j["formula"] = res.formula;
        j["predicted"] = res.predicted;
        j["det_c"] = res.det_c;
        j["det_branch_negative"] = res.det_branch_negative != 0;
        j["consistent"] = res.consistent != 0;
        ordered_json sim;
        sim["mean"] = res.mc_mean;
        sim["std_error"] = res.mc_std_error;
        sim["samples"] = res.samples;
        sim["seed"] = res.seed;
        j["simulated"] = sim;
        os << j.dump(2) << "\n";
    }
    emit(os.str(), output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis of the Pati-Braunstein deletion-machine output: separability, "
                 "Bell-CHSH criterion, teleportation fidelity"};
    app.require_subcommand(1);

    std::string format_name = "table";
    std::string output;
    double alpha = 0.5;
    double m1 = kInvSqrt2;
    double werner_p = 0.0;
    std::string range = "0.01:0.99:0.01";
    std::uint64_t seed = 1;
    std::uint64_t sweep_mc = 0;
    std::uint64_t teleport_mc = kDefaultMcSamples;

    CLI::App* c_analyze = app.add_subcommand("analyze", "analyze a single parameter point");
    c_analyze->add_option("--alpha", alpha, "input amplitude in [0,1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    c_analyze->add_option("--m1", m1, "blank-state weight in [0,1] (default 1/sqrt(2))")
        ->check(CLI::Range(0.0, 1.0));
    c_analyze->add_option("--format", format_name, "table|csv|json");
    c_analyze->add_option("--output", output, "write to file instead of stdout");

    CLI::App* c_sweep = app.add_subcommand("sweep", "analyze a grid of alpha values");
    c_sweep->add_option("--sweep", range, "grid as START:STOP:STEP (default 0.01:0.99:0.01)");
    c_sweep->add_option("--m1", m1, "blank-state weight in [0,1] (default 1/sqrt(2))")
        ->check(CLI::Range(0.0, 1.0));
    c_sweep->add_option("--mc-samples", sweep_mc,
                        "Monte Carlo samples per row (0 = skip simulation)");
    c_sweep->add_option("--seed", seed, "RNG seed");
    c_sweep->add_option("--format", format_name, "table|csv|json");
    c_sweep->add_option("--output", output, "write to file instead of stdout");

    CLI::App* c_table1 = app.add_subcommand(
        "table1", "audit the published fidelity table against the pipeline");
    c_table1->add_option("--format", format_name, "table|csv|json");
    c_table1->add_option("--output", output, "write to file instead of stdout");

    CLI::App* c_teleport = app.add_subcommand(
        "teleport", "verify the fidelity bound by Monte Carlo teleportation");
    CLI::Option* opt_alpha =
        c_teleport->add_option("--alpha", alpha, "deletion-machine input amplitude in [0,1]")
            ->check(CLI::Range(0.0, 1.0));
    c_teleport->add_option("--m1", m1, "blank-state weight in [0,1] (default 1/sqrt(2))")
        ->check(CLI::Range(0.0, 1.0));
    CLI::Option* opt_werner =
        c_teleport->add_option("--werner", werner_p, "Werner state parameter in [0,1]")
            ->check(CLI::Range(0.0, 1.0));
    opt_alpha->excludes(opt_werner);
    opt_werner->excludes(opt_alpha);
    c_teleport->add_option("--mc-samples", teleport_mc, "Monte Carlo samples (default 100000)");
    c_teleport->add_option("--seed", seed, "RNG seed");
    c_teleport->add_option("--format", format_name, "table|csv|json");
    c_teleport->add_option("--output", output, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 2;
    }

    try {
        const Format format = parse_format(format_name);
        if (c_analyze->parsed()) return cmd_analyze(alpha, m1, format, output);
        if (c_sweep->parsed()) return cmd_sweep(range, m1, sweep_mc, seed, format, output);
        if (c_table1->parsed()) return cmd_table1(format, output);
        if (c_teleport->parsed())
            return cmd_teleport(opt_alpha->count() > 0, alpha, m1, opt_werner->count() > 0,
                                werner_p, teleport_mc, seed, format, output);
        std::cerr << "error: no subcommand given\n";
        return 2;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
