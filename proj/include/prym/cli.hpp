#pragma once

// Command-line front end: bounds, exact, tables, enumerate, verify.
// Exit codes: 0 success, 1 verification failure / nonempty violations,
// 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bounds.hpp"
#include "extremal.hpp"
#include "json.hpp"
#include "search.hpp"

namespace prym {

namespace cli_detail {

inline PrimePower parse_q_or_throw(std::int64_t q) {
    auto pp = PrimePower::parse(q);
    if (!pp) throw CLI::ValidationError("--q", "q must be an odd prime power");
    return *pp;
}

inline std::int64_t default_ceiling() {
    if (const char* env = std::getenv("PRYM_CEILING")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 2) return v;
    }
    return kDefaultCeiling;
}

inline void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
}

inline std::string bounds_text(const BoundReport& rep) {
    std::ostringstream os;
    os << "q=" << rep.q << " g=" << rep.g;
    if (rep.tau) os << " tau=" << *rep.tau;
    if (rep.nx) os << " N(X)=" << *rep.nx;
    os << '\n';
    for (const auto& e : rep.entries) {
        os << "  " << e.name << " (" << e.kind << "): ";
        if (e.applicable) os << e.value;
        else os << "not applicable";
        if (!e.inputs.empty()) os << "   " << e.inputs.dump();
        os << '\n';
    }
    return os.str();
}

inline std::string bounds_csv(const BoundReport& rep) {
    std::ostringstream os;
    os << "name,kind,value,applicable\n";
    for (const auto& e : rep.entries)
        os << e.name << ',' << e.kind << ',' << e.value << ',' << (e.applicable ? "true" : "false") << '\n';
    return os.str();
}

inline std::string rows_text(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    for (const auto& r : rows)
        os << "  a1=" << r.a1 << " a2=" << r.a2 << " type=" << r.type << " count=" << r.count << " (" << r.formula
           << (r.exists ? ")" : ", type does not exist)") << '\n';
    return os.str();
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using nlohmann::json;
    CLI::App app{"point counts, bounds and extremal values for Prym varieties over odd finite fields"};
    app.require_subcommand(1);

    std::int64_t q_arg = 0;
    int g_arg = 1, dim_arg = 2;
    std::optional<std::int64_t> tau_arg, nx_arg;
    std::string format = "text", out_path, witness_path, progress_path, mode = "auto", which = "both";
    std::int64_t ceiling = cli_detail::default_ceiling();
    int jobs = 1;
    bool no_canonicalize = false;

    auto* cb = app.add_subcommand("bounds", "evaluate every applicable bound for (q, g [, tau, N(X)])");
    cb->add_option("--q", q_arg, "odd prime power")->required();
    cb->add_option("--g", g_arg, "dimension of the Prym / abelian variety")->required();
    std::int64_t tau_raw = 0, nx_raw = 0;
    auto* tau_opt = cb->add_option("--tau", tau_raw, "trace tau(P)");
    auto* nx_opt = cb->add_option("--nx", nx_raw, "number of rational points N(X)");
    cb->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
    cb->add_option("--out", out_path, "write the report to a file");

    auto* ce = app.add_subcommand("exact", "exact maximum/minimum number of points on Prym varieties of dim 1 or 2");
    ce->add_option("--q", q_arg)->required();
    ce->add_option("--dim", dim_arg)->required()->check(CLI::Range(1, 2));
    ce->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* ct = app.add_subcommand("tables", "the two tables of extremal abelian-surface types");
    ct->add_option("--q", q_arg)->required();
    ct->add_option("--which", which)->check(CLI::IsMember({"max", "min", "both"}));
    ct->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));
    ct->add_option("--out", out_path);

    auto* cn = app.add_subcommand("enumerate", "exhaustively enumerate Legendre coverings and report attained extremes");
    cn->add_option("--q", q_arg)->required();
    cn->add_option("--dim", dim_arg)->required()->check(CLI::Range(1, 2));
    cn->add_flag("--no-canonicalize", no_canonicalize, "enumerate every (f1, f2) pair without orbit reduction");
    cn->add_option("--jobs", jobs, "worker threads");
    cn->add_option("--ceiling", ceiling, "enumeration ceiling (max field size)");
    cn->add_option("--out", out_path, "write the JSON report to a file");
    cn->add_option("--witness", witness_path, "write extremal witnesses as CSV");
    cn->add_option("--progress", progress_path, "append-only chunk results; reruns resume from it");

    auto* cv = app.add_subcommand("verify", "check the exact extremal theorems against search");
    cv->add_option("--q", q_arg)->required();
    cv->add_option("--dim", dim_arg)->required()->check(CLI::Range(1, 2));
    cv->add_option("--mode", mode)->check(CLI::IsMember({"auto", "full", "attainment"}));
    cv->add_option("--jobs", jobs);
    cv->add_option("--ceiling", ceiling);

    std::vector<const char*> argv;
    argv.push_back("prym");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        PrimePower pp = cli_detail::parse_q_or_throw(q_arg);
        if (tau_opt->count()) tau_arg = tau_raw;
        if (nx_opt->count()) nx_arg = nx_raw;

        if (cb->parsed()) {
            BoundReport rep = make_bound_report(pp.q, g_arg, tau_arg, nx_arg);
            std::string text;
            if (format == "json") text = rep.to_json().dump(2) + "\n";
            else if (format == "csv") text = cli_detail::bounds_csv(rep);
            else text = cli_detail::bounds_text(rep);
            cli_detail::write_output(text, out_path, out);
            return 0;
        }

        if (ce->parsed()) {
            ExactValue mx, mn;
            if (dim_arg == 2) {
                mx = prym_max_2(pp);
                mn = prym_min_2(pp);
            } else {
                auto e = elliptic_extremes(pp);
                mx = e.max;
                mn = e.min;
            }
            if (format == "json") {
                json j{{"q", pp.q}, {"dim", dim_arg}, {"max", mx.value}, {"max_case", mx.case_name},
                       {"min", mn.value}, {"min_case", mn.case_name}};
                out << j.dump(2) << '\n';
            } else {
                out << "Prym_" << pp.q << "(" << dim_arg << ") = " << mx.value << "   [case: " << mx.case_name << "]\n";
                out << "prym_" << pp.q << "(" << dim_arg << ") = " << mn.value << "   [case: " << mn.case_name << "]\n";
            }
            return 0;
        }

        if (ct->parsed()) {
            std::string text;
            if (format == "json") {
                json j;
                auto rows_json = [](const std::vector<TableRow>& rows) {
                    json arr = json::array();
                    for (const auto& r : rows)
                        arr.push_back({{"a1", r.a1}, {"a2", r.a2}, {"type", r.type}, {"formula", r.formula},
                                       {"count", r.count}, {"exists", r.exists}, {"note", r.note}});
                    return arr;
                };
                if (which != "min") j["max"] = rows_json(table_max(pp));
                if (which != "max") j["min"] = rows_json(table_min(pp));
                text = j.dump(2) + "\n";
            } else if (format == "csv") {
                if (which != "min") text += tables_csv(table_max(pp));
                if (which != "max") text += tables_csv(table_min(pp));
            } else {
                if (which != "min") text += "maximizing (a1, a2), b = q+1+m:\n" + cli_detail::rows_text(table_max(pp));
                if (which != "max") text += "minimizing (a1, a2), q > 5, b' = q+1-m:\n" + cli_detail::rows_text(table_min(pp));
            }
            cli_detail::write_output(text, out_path, out);
            return 0;
        }

        if (cn->parsed()) {
            EnumerationSpec spec = make_spec(pp, dim_arg, !no_canonicalize, ceiling);
            SearchOptions opts;
            opts.jobs = jobs;
            opts.progress_path = progress_path;
            ExtremesReport rep = attained_extremes(spec, opts);
            cli_detail::write_output(rep.to_json().dump(2) + "\n", out_path, out);
            if (!witness_path.empty()) {
                std::ofstream w(witness_path);
                if (!w) throw std::runtime_error("cannot open witness file: " + witness_path);
                w << "q;f1;f2;fP;N1X;N1Y\n";
                w << rep.max_witness << '\n';
                if (rep.min_witness != rep.max_witness) w << rep.min_witness << '\n';
                if (!rep.virtual_witness.empty() && rep.virtual_witness != rep.max_witness &&
                    rep.virtual_witness != rep.min_witness)
                    w << rep.virtual_witness << '\n';
            }
            return rep.violation_count == 0 ? 0 : 1;
        }

        if (cv->parsed()) {
            SearchOptions opts;
            opts.jobs = jobs;
            TheoremReport rep = verify_theorem(pp, dim_arg, mode, opts);
            json j{{"q", pp.q}, {"dim", dim_arg}, {"mode", rep.mode}, {"ok", rep.ok}, {"details", rep.details}};
            out << j.dump(2) << '\n';
            return rep.ok ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        err << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace prym
