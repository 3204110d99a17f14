// bilap — bicomplex algebra and Laplace transform toolkit.
//
// Subcommands: decompose, laplace, invert, pairs.
// Exit codes: 0 success, 1 numeric failure, 2 usage/validation error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bilap/bicomplex.hpp"
#include "bilap/forward.hpp"
#include "bilap/inverse.hpp"
#include "bilap/serialize.hpp"
#include "bilap/signal.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string format;  // "", "csv" or "json"; decompose defaults to text
    std::string out_path;
    std::string config_path;
    // Bromwich overrides
    double abscissa_delta = 1.0;
    double half_height = 0.0;
    double step = 0.0;
    double tol = 1e-6;
    int max_refinements = 6;
    double reality_tol = 1e-6;
    // forward quadrature overrides
    double t_max = 10.0;
    int n_panels = 16;
    double tail_tol = 1e-10;
};

bilap::BromwichConfig bromwich_config(const Options& opt) {
    bilap::BromwichConfig cfg;
    cfg.abscissa_offset = opt.abscissa_delta;
    cfg.half_height = opt.half_height;
    cfg.step = opt.step;
    cfg.refine_tol = opt.tol;
    cfg.max_refinements = opt.max_refinements;
    cfg.reality_tol = opt.reality_tol;
    return cfg;
}

bilap::QuadratureConfig quadrature_config(const Options& opt) {
    bilap::QuadratureConfig cfg;
    cfg.t_max = opt.t_max;
    cfg.n_panels = opt.n_panels;
    cfg.tail_tol = opt.tail_tol;
    return cfg;
}

// Config file: flat JSON mirroring the override fields.  Flags override
// config values, config values override defaults.
void load_config(const std::string& path, Options& opt) {
    std::ifstream in(path);
    if (!in) throw bilap::InvalidArgumentError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw bilap::InvalidArgumentError("malformed config JSON: " + std::string(e.what()));
    }
    const auto num = [&](const char* key, double& target) {
        if (j.contains(key)) target = j.at(key).get<double>();
    };
    if (j.contains("format")) {
        opt.format = j.at("format").get<std::string>();
        if (opt.format != "csv" && opt.format != "json") {
            throw bilap::InvalidArgumentError("config format must be csv or json");
        }
    }
    num("abscissa_delta", opt.abscissa_delta);
    num("half_height", opt.half_height);
    num("step", opt.step);
    num("tol", opt.tol);
    if (j.contains("max_refinements")) opt.max_refinements = j.at("max_refinements").get<int>();
    num("reality_tol", opt.reality_tol);
    num("t_max", opt.t_max);
    if (j.contains("n_panels")) opt.n_panels = j.at("n_panels").get<int>();
    num("tail_tol", opt.tail_tol);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_complex(const bilap::Complex& c) {
    const std::string re = bilap::format_double(c.real());
    const std::string im = bilap::format_double(c.imag());
    return re + (c.imag() < 0 ? "" : "+") + im + "i";
}

void write_output(const Options& opt, const std::string& content) {
    if (opt.out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) {
        throw bilap::InvalidArgumentError("cannot open output file '" + opt.out_path + "'");
    }
    out << content;
}

std::vector<double> parse_grid(const std::string& spec) {
    double parts[3];
    size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        const size_t colon = spec.find(':', start);
        const bool last = (i == 2);
        if (last != (colon == std::string::npos)) {
            throw bilap::InvalidArgumentError("grid must be start:stop:step, got '" + spec + "'");
        }
        const std::string field = spec.substr(start, last ? std::string::npos : colon - start);
        char* end = nullptr;
        parts[i] = std::strtod(field.c_str(), &end);
        if (end == field.c_str() || *end != '\0') {
            throw bilap::InvalidArgumentError("cannot parse grid field '" + field + "'");
        }
        start = colon + 1;
    }
    const double lo = parts[0], hi = parts[1], step = parts[2];
    if (!(lo > 0.0)) throw bilap::InvalidArgumentError("grid start must be > 0");
    if (!(step > 0.0)) throw bilap::InvalidArgumentError("grid step must be > 0");
    if (hi < lo) throw bilap::InvalidArgumentError("grid stop must be >= start");
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) grid[static_cast<size_t>(i)] = lo + i * step;
    return grid;
}

std::map<std::string, double> catalog_args(const std::string& id,
                                           const std::optional<double>& omega,
                                           const std::optional<double>& a) {
    std::map<std::string, double> params;
    const auto expected = bilap::catalog_params(id);
    const bool wants_omega =
        std::find(expected.begin(), expected.end(), "omega") != expected.end();
    const bool wants_a = std::find(expected.begin(), expected.end(), "a") != expected.end();
    if (wants_omega && omega) params["omega"] = *omega;
    if (wants_a && a) params["a"] = *a;
    return params;
}

// ---------------------------------------------------------------- decompose

int cmd_decompose(const Options& opt, const std::string& text) {
    const bilap::Bicomplex x = bilap::bicomplex_from_text(text);
    const bilap::IdempotentPair p = bilap::to_idempotent(x);
    const double n = bilap::norm(x);
    const bool singular = bilap::is_singular(x);

    std::ostringstream out;
    if (opt.format == "json") {
        nlohmann::json j;
        j["coefficients"] = {x.a0, x.a1, x.a2, x.a3};
        j["z1"] = {x.z1().real(), x.z1().imag()};
        j["z2"] = {x.z2().real(), x.z2().imag()};
        j["idempotent"] = bilap::idempotent_to_json(p);
        j["norm"] = n;
        j["singular"] = singular;
        out << j.dump(2) << '\n';
    } else if (opt.format == "csv") {
        out << "a0,a1,a2,a3,xi1_re,xi1_im,xi2_re,xi2_im,norm,singular\n"
            << bilap::bicomplex_to_text(x) << ','
            << bilap::format_double(p.xi1.real()) << ','
            << bilap::format_double(p.xi1.imag()) << ','
            << bilap::format_double(p.xi2.real()) << ','
            << bilap::format_double(p.xi2.imag()) << ','
            << bilap::format_double(n) << ',' << (singular ? "true" : "false")
            << '\n';
    } else {
        out << "input    = " << bilap::bicomplex_to_text(x) << '\n'
            << "z1       = " << format_complex(x.z1()) << '\n'
            << "z2       = " << format_complex(x.z2()) << '\n'
            << "xi1      = " << format_complex(p.xi1) << '\n'
            << "xi2      = " << format_complex(p.xi2) << '\n'
            << "norm     = " << bilap::format_double(n) << '\n'
            << "singular = " << (singular ? "true" : "false") << '\n';
    }
    write_output(opt, out.str());
    return kExitOk;
}

// ------------------------------------------------------------------ laplace

bilap::SignalSpec load_samples_signal(const std::string& path, double order_k) {
    std::ifstream in(path);
    if (!in) throw bilap::InvalidArgumentError("cannot open samples file '" + path + "'");
    std::vector<double> ts;
    std::vector<double> fs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (ts.empty() && line.find_first_not_of("tf, \r") == std::string::npos) {
            continue;  // header line "t,f"
        }
        const size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw bilap::InvalidArgumentError("samples file needs 't,f' rows, got '" + line + "'");
        }
        char* end = nullptr;
        const double t = std::strtod(line.c_str(), &end);
        const double f = std::strtod(line.c_str() + comma + 1, nullptr);
        (void)end;
        ts.push_back(t);
        fs.push_back(f);
    }
    if (ts.size() < 2) {
        throw bilap::InvalidArgumentError("samples file needs at least two rows");
    }
    if (ts.front() < 0.0) {
        throw bilap::InvalidArgumentError("sample times must satisfy t >= 0");
    }
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        if (!(ts[i] < ts[i + 1])) {
            throw bilap::InvalidArgumentError("sample times must be strictly increasing");
        }
    }
    // Linear interpolation inside [t_first, t_last]; constant before the
    // first sample, zero beyond the last (the transform integral is
    // truncated there).
    auto eval = [ts, fs](double t) -> double {
        if (t <= ts.front()) return fs.front();
        if (t > ts.back()) return 0.0;
        const auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const size_t hi = static_cast<size_t>(it - ts.begin());
        const size_t lo = hi - 1;
        const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
        return fs[lo] + w * (fs[hi] - fs[lo]);
    };
    bilap::SignalSpec spec =
        bilap::make_signal(std::move(eval), order_k, "samples:" + path, ts.back());
    spec.support_end = ts.back();
    return spec;
}

int cmd_laplace(const Options& opt, const bilap::SignalSpec& signal,
                const std::vector<std::string>& xi_texts) {
    std::vector<bilap::Bicomplex> xis;
    xis.reserve(xi_texts.size());
    for (const auto& text : xi_texts) xis.push_back(bilap::bicomplex_from_text(text));

    const auto points = bilap::laplace_grid(signal, xis, quadrature_config(opt));

    std::ostringstream out;
    bool any_failed = false;
    if (opt.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& pt : points) {
            nlohmann::json j;
            j["xi"] = bilap::idempotent_to_json(bilap::to_idempotent(pt.xi));
            if (pt.ok) {
                j["F"] = bilap::idempotent_to_json(bilap::to_idempotent(pt.value));
                j["status"] = "ok";
            } else {
                j["F"] = nullptr;
                j["status"] = pt.error;
                any_failed = true;
            }
            arr.push_back(std::move(j));
        }
        out << arr.dump(2) << '\n';
    } else {
        out << "xi_a0,xi_a1,xi_a2,xi_a3,F_a0,F_a1,F_a2,F_a3,status\n";
        for (const auto& pt : points) {
            out << bilap::bicomplex_to_text(pt.xi) << ',';
            if (pt.ok) {
                out << bilap::bicomplex_to_text(pt.value) << ",ok\n";
            } else {
                out << ",,,," << csv_escape(pt.error) << '\n';
                any_failed = true;
            }
        }
    }
    write_output(opt, out.str());
    return any_failed ? kExitNumeric : kExitOk;
}

// ------------------------------------------------------------------- invert

int cmd_invert(const Options& opt, const bilap::ImageFunction& image,
               const std::vector<double>& grid, bilap::InversionMethod method) {
    const auto series = bilap::invert_grid(image, grid, bromwich_config(opt), method);

    std::ostringstream out;
    bool any_failed = false;
    if (opt.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& pt : series) {
            if (!pt.ok) {
                any_failed = true;
                std::cerr << "bilap: t = " << pt.t << ": " << pt.error << '\n';
                continue;
            }
            arr.push_back({{"t", pt.t},
                           {"f", pt.value},
                           {"reality_defect", pt.reality_defect},
                           {"refinements", pt.refinements}});
        }
        out << arr.dump(2) << '\n';
    } else {
        out << "t,f,reality_defect,refinements\n";
        for (const auto& pt : series) {
            if (!pt.ok) {
                any_failed = true;
                std::cerr << "bilap: t = " << pt.t << ": " << pt.error << '\n';
                continue;
            }
            out << bilap::format_double(pt.t) << ',' << bilap::format_double(pt.value)
                << ',' << bilap::format_double(pt.reality_defect) << ','
                << pt.refinements << '\n';
        }
    }
    write_output(opt, out.str());
    return any_failed ? kExitNumeric : kExitOk;
}

// -------------------------------------------------------------------- pairs

struct PairCombo {
    std::string id;
    std::optional<double> omega;
    std::optional<double> a;
};

std::vector<PairCombo> default_combos() {
    std::vector<PairCombo> combos;
    combos.push_back({"unit_step", {}, {}});
    for (const double w : {1.0, 2.0}) combos.push_back({"sin", w, {}});
    for (const double w : {1.0, 2.0}) combos.push_back({"cos", w, {}});
    for (const char* id : {"damped_cos", "damped_sin"}) {
        for (const double w : {1.0, 2.0}) {
            for (const double a : {0.5, 1.0}) {
                combos.push_back({id, w, a});
            }
        }
    }
    return combos;
}

int cmd_pairs(const Options& opt, const std::vector<double>& grid,
              std::optional<double> tol_override,
              const std::vector<std::string>& only_pairs) {
    std::vector<PairCombo> combos = default_combos();
    if (!only_pairs.empty()) {
        for (const auto& id : only_pairs) {
            bilap::catalog_params(id);  // validates the id
        }
        std::erase_if(combos, [&](const PairCombo& c) {
            return std::find(only_pairs.begin(), only_pairs.end(), c.id) ==
                   only_pairs.end();
        });
    }

    const double residue_tol = tol_override.value_or(1e-8);
    const double bromwich_tol = tol_override.value_or(1e-3);
    const bilap::BromwichConfig cfg = bromwich_config(opt);

    std::ostringstream out;
    out << "pair,omega,a,method,max_abs_error,tolerance,status\n";
    bool any_fail = false;
    for (const auto& combo : combos) {
        const bilap::CatalogEntry entry =
            bilap::catalog_lookup(combo.id, catalog_args(combo.id, combo.omega, combo.a));
        const bilap::ImageFunction image = bilap::catalog_image(entry);
        for (const auto method :
             {bilap::InversionMethod::Residue, bilap::InversionMethod::Bromwich}) {
            const bool residue = method == bilap::InversionMethod::Residue;
            const auto series = bilap::invert_grid(image, grid, cfg, method);
            double max_err = 0.0;
            bool errored = false;
            for (const auto& pt : series) {
                if (!pt.ok) {
                    errored = true;
                    continue;
                }
                max_err = std::max(max_err, std::abs(pt.value - entry.object.eval(pt.t)));
            }
            const double tol = residue ? residue_tol : bromwich_tol;
            const bool pass = !errored && max_err <= tol;
            any_fail = any_fail || !pass;
            out << combo.id << ','
                << (combo.omega ? bilap::format_double(*combo.omega) : "") << ','
                << (combo.a ? bilap::format_double(*combo.a) : "") << ','
                << (residue ? "residue" : "bromwich") << ','
                << (errored ? "error" : bilap::format_double(max_err)) << ','
                << bilap::format_double(tol) << ',' << (pass ? "PASS" : "FAIL")
                << '\n';
        }
    }
    write_output(opt, out.str());
    return any_fail ? kExitNumeric : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;

    // --config is honored before flag parsing so flags keep precedence.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                load_config(argv[i + 1], opt);
            } catch (const bilap::Error& e) {
                std::cerr << "bilap: " << e.what() << '\n';
                return kExitUsage;
            }
        }
    }

    CLI::App app{"bicomplex algebra and Laplace transform toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags are accepted after the subcommand too
    app.add_option("--format", opt.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opt.out_path, "write output to this file instead of stdout");
    app.add_option("--config", opt.config_path, "JSON config file with numeric overrides");

    // decompose
    std::string decompose_arg;
    auto* decompose = app.add_subcommand(
        "decompose", "idempotent decomposition report for a bicomplex number");
    decompose->add_option("coefficients", decompose_arg, "bicomplex as \"a0,a1,a2,a3\"")
        ->required();

    // laplace
    std::string signal_id;
    std::string samples_path;
    double order_k = 0.0;
    bool order_k_given = false;
    std::optional<double> omega_flag;
    std::optional<double> a_flag;
    std::vector<std::string> xi_texts;
    auto* laplace = app.add_subcommand(
        "laplace", "forward bicomplex Laplace transform at one or more points");
    laplace->add_option("--signal", signal_id, "catalog object id");
    laplace->add_option("--samples", samples_path, "CSV sample file with t,f columns");
    laplace->add_option("--order-k", order_k, "declared exponential order for --samples")
        ->each([&](const std::string&) { order_k_given = true; });
    laplace->add_option("--omega", [&omega_flag](const CLI::results_t& res) {
        omega_flag = std::stod(res[0]);
        return true;
    }, "omega parameter for catalog entries");
    laplace->add_option("--a", [&a_flag](const CLI::results_t& res) {
        a_flag = std::stod(res[0]);
        return true;
    }, "damping parameter for catalog entries");
    laplace->add_option("--xi", xi_texts, "evaluation point \"a0,a1,a2,a3\" (repeatable)")
        ->required();
    laplace->add_option("--t-max", opt.t_max, "starting integration horizon");
    laplace->add_option("--n-panels", opt.n_panels, "base Gauss-Legendre panel count");
    laplace->add_option("--tail-tol", opt.tail_tol, "tail bound / refinement tolerance");

    // invert
    std::string pair_id;
    std::string rational1_path;
    std::string rational2_path;
    std::string grid_spec;
    std::string method_name = "auto";
    auto* invert = app.add_subcommand(
        "invert", "inverse bicomplex Laplace transform over a t grid");
    invert->add_option("--pair", pair_id, "catalog pair id");
    invert->add_option("--rational-xi1", rational1_path, "JSON rational for component 1");
    invert->add_option("--rational-xi2", rational2_path, "JSON rational for component 2");
    invert->add_option("--omega", [&omega_flag](const CLI::results_t& res) {
        omega_flag = std::stod(res[0]);
        return true;
    }, "omega parameter for catalog entries");
    invert->add_option("--a", [&a_flag](const CLI::results_t& res) {
        a_flag = std::stod(res[0]);
        return true;
    }, "damping parameter for catalog entries");
    invert->add_option("--grid", grid_spec, "t grid start:stop:step (start > 0)")->required();
    invert->add_option("--method", method_name, "bromwich, residue or auto")
        ->check(CLI::IsMember({"bromwich", "residue", "auto"}));
    invert->add_option("--abscissa-delta", opt.abscissa_delta, "Bromwich line offset delta");
    invert->add_option("--half-height", opt.half_height, "Bromwich truncation half-height Y");
    invert->add_option("--step", opt.step, "Bromwich quadrature step h");
    invert->add_option("--tol", opt.tol, "Bromwich refinement tolerance");

    // pairs
    std::string pairs_grid_spec = "0.1:5:0.1";
    std::optional<double> pairs_tol;
    std::vector<std::string> only_pairs;
    auto* pairs = app.add_subcommand(
        "pairs", "verify the transform-pair catalog against closed forms");
    pairs->add_option("--tol", [&pairs_tol](const CLI::results_t& res) {
        pairs_tol = std::stod(res[0]);
        return true;
    }, "override the PASS/FAIL tolerance for both methods");
    pairs->add_option("--grid", pairs_grid_spec, "t grid start:stop:step");
    pairs->add_option("--pairs", only_pairs, "restrict to these catalog ids")
        ->delimiter(',');
    pairs->add_option("--abscissa-delta", opt.abscissa_delta, "Bromwich line offset delta");
    pairs->add_option("--half-height", opt.half_height, "Bromwich truncation half-height Y");
    pairs->add_option("--step", opt.step, "Bromwich quadrature step h");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*decompose) {
            return cmd_decompose(opt, decompose_arg);
        }
        if (*laplace) {
            if (signal_id.empty() == samples_path.empty()) {
                std::cerr << "bilap: provide exactly one of --signal or --samples\n";
                return kExitUsage;
            }
            bilap::SignalSpec signal;
            if (!signal_id.empty()) {
                const auto entry = bilap::catalog_lookup(
                    signal_id, catalog_args(signal_id, omega_flag, a_flag));
                signal = entry.object;
            } else {
                if (!order_k_given) {
                    std::cerr << "bilap: --samples requires --order-k\n";
                    return kExitUsage;
                }
                signal = load_samples_signal(samples_path, order_k);
            }
            return cmd_laplace(opt, signal, xi_texts);
        }
        if (*invert) {
            const std::vector<double> grid = parse_grid(grid_spec);
            bilap::ImageFunction image;
            if (!pair_id.empty()) {
                if (!rational1_path.empty() || !rational2_path.empty()) {
                    std::cerr << "bilap: --pair conflicts with --rational-xi1/2\n";
                    return kExitUsage;
                }
                const auto entry = bilap::catalog_lookup(
                    pair_id, catalog_args(pair_id, omega_flag, a_flag));
                image = bilap::catalog_image(entry);
            } else if (!rational1_path.empty() && !rational2_path.empty()) {
                bilap::RationalFunction r1 = bilap::load_rational_file(rational1_path);
                bilap::RationalFunction r2 = bilap::load_rational_file(rational2_path);
                // no declared k is available: the line must clear every pole
                double k = -1e300;
                for (const auto* r : {&r1, &r2}) {
                    for (const auto& p : bilap::find_poles(*r)) {
                        k = std::max(k, p.location.real());
                    }
                }
                image = bilap::make_rational_image(std::move(r1), std::move(r2), k);
            } else {
                std::cerr << "bilap: provide --pair or both --rational-xi1 and --rational-xi2\n";
                return kExitUsage;
            }
            const bilap::InversionMethod method =
                method_name == "bromwich"  ? bilap::InversionMethod::Bromwich
                : method_name == "residue" ? bilap::InversionMethod::Residue
                                           : bilap::InversionMethod::Auto;
            return cmd_invert(opt, image, grid, method);
        }
        if (*pairs) {
            const std::vector<double> grid = parse_grid(pairs_grid_spec);
            return cmd_pairs(opt, grid, pairs_tol, only_pairs);
        }
    } catch (const bilap::InvalidArgumentError& e) {
        std::cerr << "bilap: " << e.what() << '\n';
        return kExitUsage;
    } catch (const bilap::DomainError& e) {
        std::cerr << "bilap: " << e.what() << '\n';
        return kExitUsage;
    } catch (const bilap::Error& e) {
        std::cerr << "bilap: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}
