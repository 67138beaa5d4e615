#pragma once

// The `ds` command line.  run_cli is separate from main so tests can drive
// it with in-memory streams.
//
// Exit codes: 0 success, 1 domain error (not doubly stochastic, order cap,
// infeasible construction, ...), 2 usage or parse error.

#include "dsm/dsm.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace dsm::cli {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline unsigned thread_count(int flag) {
    if (flag > 0) return static_cast<unsigned>(flag);
    if (const char* env = std::getenv("DS_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
            throw UsageError("DS_THREADS must be a positive integer");
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline RatMatrix load_matrix(const std::string& path, std::istream& stdin_stream) {
    if (path == "-") return read_matrix(stdin_stream);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    return read_matrix(in);
}

inline Rational parse_rational_flag(const std::string& name, const std::string& value) {
    auto r = Rational::try_parse(value);
    if (!r) throw UsageError("--" + name + " expects an exact rational like -21/20, got '" + value + "'");
    return *r;
}

inline DoublyStochastic canonical_by_name(const std::string& name) {
    if (auto tag = parse_canonical_tag(name)) return canonical(*tag);
    auto sized = [&](const std::string& prefix) -> std::optional<std::size_t> {
        if (name.rfind(prefix, 0) != 0) return std::nullopt;
        const std::string digits = name.substr(prefix.size());
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 6)
            throw UsageError("bad order in '" + name + "'");
        return static_cast<std::size_t>(std::stoul(digits));
    };
    if (auto n = sized("Tn:")) return make_tn(*n);
    if (auto n = sized("Jn:")) return make_jn(*n);
    throw UsageError("unknown canonical name '" + name + "' (I3|J3|I1J2|S|T|R|Tn:<n>|Jn:<n>)");
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                   std::istream& in = std::cin) {
    CLI::App app{"Exact doubly stochastic matrix toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    bool csv = false;
    int threads_flag = 0;
    app.add_flag("--csv", csv, "CSV output for tabular subcommands");
    app.add_option("--threads", threads_flag, "worker threads (default: DS_THREADS or all cores)");

    std::string file;
    auto add_file_cmd = [&](const char* name, const char* help) {
        auto* sc = app.add_subcommand(name, help);
        sc->add_option("file", file, "matrix file (JSON or CSV), '-' for stdin")->required();
        return sc;
    };

    auto* check = add_file_cmd("check", "validate double stochasticity");
    auto* gap = add_file_cmd("gap", "Frobenius norm squared, maximal trace and their gap");
    auto* maxtrace = add_file_cmd("maxtrace", "maximal diagonal sum");
    std::string method = "assignment";
    maxtrace->add_option("--method", method, "brute|assignment")->check(CLI::IsMember({"brute", "assignment"}));
    auto* perm = add_file_cmd("permanent", "exact permanent (Ryser)");
    auto* maxprod = add_file_cmd("maxprod", "maximal diagonal product");
    auto* classify = add_file_cmd("classify", "saturation decision for 2x2 and 3x3 matrices");
    auto* params = add_file_cmd("params", "weak-form coordinates (u, v, w) of a 3x3 matrix with a zero at (1,0)");

    std::string u_text, v_text;
    auto* region = app.add_subcommand("region", "region membership of a parameter point");
    region->add_option("--u", u_text)->required();
    region->add_option("--v", v_text)->required();

    double b_min = -1.1, b_max = 1.1, b_step = 0.01;
    auto* boundary = app.add_subcommand("boundary", "sample the boundary curves f, g, h");
    boundary->add_option("--min", b_min);
    boundary->add_option("--max", b_max);
    boundary->add_option("--step", b_step);

    std::string sign_text = "minus";
    auto* construct = app.add_subcommand("construct", "weak-form matrix at a parameter point");
    construct->add_option("--u", u_text)->required();
    construct->add_option("--v", v_text)->required();
    construct->add_option("--sign", sign_text)->check(CLI::IsMember({"minus", "plus"}));

    std::int64_t denominator = 60;
    std::string zero_cell_text;
    auto* enumerate = app.add_subcommand("enumerate", "exhaustive 3x3 search on the (1/d)Z grid");
    enumerate->add_option("--denominator", denominator);
    enumerate->add_option("--zero-cell", zero_cell_text, "only matrices with a zero at r,c");

    std::size_t n = 3, samples = 100, max_parts = 0;
    std::uint64_t seed = 0;
    auto* products = app.add_subcommand("products", "seeded block-J product search");
    products->add_option("--n", n);
    products->add_option("--samples", samples);
    products->add_option("--seed", seed);
    products->add_option("--max-parts", max_parts, "default: n");

    double tol = 1e-9, magnitude = 1e-10;
    std::string perturb_file;
    auto* probe = app.add_subcommand("probe", "float search plus exact rational reconstruction");
    probe->add_option("--n", n);
    probe->add_option("--samples", samples);
    probe->add_option("--seed", seed);
    probe->add_option("--tol", tol);
    probe->add_option("--perturb", perturb_file, "also probe a seeded perturbation of this matrix");
    probe->add_option("--perturb-magnitude", magnitude);

    std::string name;
    auto* canon = app.add_subcommand("canonical", "print a named matrix in the matrix file format");
    canon->add_option("--name", name, "I3|J3|I1J2|S|T|R|Tn:<n>|Jn:<n>")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "ds: " << e.what() << '\n';
        return 2;
    }

    auto emit = [&](const Json& j) { out << j.dump() << '\n'; };

    try {
        if (check->parsed()) {
            RatMatrix m = load_matrix(file, in);
            if (auto v = check_ds(m)) {
                Json j;
                j["doubly_stochastic"] = false;
                j["violation"] = to_string(v->kind);
                j["row"] = v->row;
                j["col"] = v->col;
                j["actual"] = v->actual.str();
                emit(j);
                err << "ds: not doubly stochastic: " << v->describe() << '\n';
                return 1;
            }
            Json j;
            j["doubly_stochastic"] = true;
            j["n"] = m.order();
            emit(j);
        } else if (gap->parsed()) {
            emit(to_json(marcus_ree_gap(validate_ds(load_matrix(file, in)))));
        } else if (maxtrace->parsed()) {
            RatMatrix m = load_matrix(file, in);
            emit(to_json(method == "brute" ? max_trace_brute(m) : max_trace_assignment(m)));
        } else if (perm->parsed()) {
            Json j;
            j["permanent"] = permanent(load_matrix(file, in)).str();
            emit(j);
        } else if (maxprod->parsed()) {
            auto [value, arg] = max_diag_product(load_matrix(file, in));
            Json j;
            j["max_product"] = value.str();
            j["argmax"] = to_json(arg);
            emit(j);
        } else if (classify->parsed()) {
            DoublyStochastic a = validate_ds(load_matrix(file, in));
            if (a.order() == 2) {
                Json j;
                j["saturated"] = classify2(a);
                j["gap"] = marcus_ree_gap(a).gap.str();
                emit(j);
            } else {
                emit(to_json(classify3(a)));
            }
        } else if (params->parsed()) {
            WeakFormCoordinates c = matrix_to_params(validate_ds(load_matrix(file, in)));
            Json j;
            j["u"] = c.u.str();
            j["v"] = c.v.str();
            j["w"] = c.w.str();
            j["sign"] = to_string(root_sign_of(c));
            j["residual"] = weak_residual(c.u, c.v, c.w).str();
            emit(j);
        } else if (region->parsed()) {
            RegionPoint p{parse_rational_flag("u", u_text), parse_rational_flag("v", v_text)};
            Json j;
            j["E0"] = in_disc_e0(p);
            j["U_minus"] = in_u_minus(p);
            j["U_plus"] = in_u_plus(p);
            emit(j);
        } else if (boundary->parsed()) {
            auto samples_out = boundary_curves(b_min, b_max, b_step);
            if (csv) {
                out << boundary_csv(samples_out);
            } else {
                Json list = Json::array();
                for (const auto& s : samples_out) {
                    Json e;
                    e["u"] = s.u;
                    e["f"] = s.f ? Json(*s.f) : Json(nullptr);
                    e["g"] = s.g ? Json(*s.g) : Json(nullptr);
                    e["h"] = s.h ? Json(*s.h) : Json(nullptr);
                    list.push_back(std::move(e));
                }
                emit(list);
            }
        } else if (construct->parsed()) {
            RegionPoint p{parse_rational_flag("u", u_text), parse_rational_flag("v", v_text)};
            WeakFormParams q = make_params(p, sign_text == "minus" ? RootSign::Minus : RootSign::Plus);
            ValidatedWeakForm m = params_to_matrix(q);
            Json j;
            j["u"] = p.u.str();
            j["v"] = p.v.str();
            j["sign"] = sign_text;
            j["discriminant"] = q.root.discriminant.str();
            j["exact"] = q.w.has_value();
            if (q.w) {
                j["w"] = q.w->str();
                j["rows"] = matrix_rows_json(m.exact->matrix());
            } else {
                j["w"] = q.w_approx;
                j["rows"] = float_rows_json(m.approx);
            }
            emit(j);
        } else if (enumerate->parsed()) {
            std::optional<GridCell> zero;
            if (!zero_cell_text.empty()) {
                unsigned r = 0, c = 0;
                char comma = 0;
                std::istringstream ss(zero_cell_text);
                if (!(ss >> r >> comma >> c) || comma != ',' || r > 2 || c > 2 || !ss.eof())
                    throw UsageError("--zero-cell expects r,c with 0 <= r,c <= 2");
                zero = GridCell{r, c};
            }
            const unsigned workers = thread_count(threads_flag);
            err << "enumerate: d=" << denominator << ", " << workers << " thread(s)\n";
            EnumerationReport rep = enumerate_grid(denominator, zero, workers);
            err << "enumerate: " << rep.ds_count << " doubly stochastic, " << rep.saturating.size()
                << " saturating\n";
            if (csv) {
                out << "a00,a01,a02,a10,a11,a12,a20,a21,a22,form\n";
                for (const auto& s : rep.saturating) {
                    for (const auto& x : s.matrix.data()) out << x.str() << ',';
                    out << to_string(*s.classification.form) << '\n';
                }
            } else {
                emit(to_json(rep));
            }
        } else if (products->parsed()) {
            auto list = search_products(n, max_parts == 0 ? n : max_parts, samples, seed);
            if (csv) {
                out << "index,frob_sq,max_trace,identity_holds,saturates\n";
                for (std::size_t i = 0; i < list.size(); ++i)
                    out << i << ',' << list[i].frob_sq << ',' << list[i].max_trace << ','
                        << (list[i].identity_holds ? "true" : "false") << ','
                        << (list[i].saturates ? "true" : "false") << '\n';
            } else {
                Json a = Json::array();
                for (const auto& p : list) a.push_back(to_json(p));
                emit(a);
            }
        } else if (probe->parsed()) {
            ProbeOptions opt;
            opt.n = n;
            opt.samples = samples;
            opt.seed = seed;
            opt.tol = tol;
            if (!perturb_file.empty()) opt.extra.push_back(perturb(load_matrix(perturb_file, in), magnitude, seed));
            err << "probe: n=" << n << ", " << samples << " samples\n";
            ProbeReport rep = rationality_probe(opt);
            if (csv) {
                out << "index,source,float_gap,verdict,form\n";
                for (const auto& f : rep.findings) {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.6g", f.float_gap);
                    out << f.index << ',' << to_string(f.source) << ',' << buf << ',' << to_string(f.verdict) << ','
                        << (f.form ? to_string(*f.form) : "") << '\n';
                }
            } else {
                emit(to_json(rep));
            }
        } else if (canon->parsed()) {
            DoublyStochastic a = canonical_by_name(name);
            out << (csv ? write_matrix_csv(a.matrix()) : write_matrix(a.matrix()) + "\n");
        }
    } catch (const ParseError& e) {
        err << "ds: parse error: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        err << "ds: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "ds: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace dsm::cli
