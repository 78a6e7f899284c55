// Command-line front end: evaluate any exported function at a point, run
// the seeded verification suite, or sweep a function over a grid.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "jf/registry.hpp"
#include "jf/types.hpp"
#include "jf/verify.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 ok, 1 failed verification, 2 unknown function,
// 3 domain/pole error or malformed axis, 4 convergence error.
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUnknownFunction = 2;
constexpr int kExitDomain = 3;
constexpr int kExitConvergence = 4;

void error_json(const std::string& kind, const std::string& message) {
    nlohmann::json j;
    j["error"]["kind"] = kind;
    j["error"]["message"] = message;
    std::cerr << j.dump() << "\n";
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct AxisSpec {
    std::string path;   // dotted path into the point JSON, optional ".im" suffix
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    bool imag = false;
};

AxisSpec parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("axis spec must be name=start:stop:count");
    AxisSpec ax;
    ax.path = text.substr(0, eq);
    if (ax.path.size() > 3 && ax.path.substr(ax.path.size() - 3) == ".im") {
        ax.imag = true;
        ax.path = ax.path.substr(0, ax.path.size() - 3);
    }
    const std::string rhs = text.substr(eq + 1);
    const auto c1 = rhs.find(':');
    const auto c2 = rhs.find(':', c1 == std::string::npos ? std::string::npos : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw std::invalid_argument("axis spec must be name=start:stop:count");
    }
    std::size_t idx = 0;
    ax.start = std::stod(rhs.substr(0, c1), &idx);
    ax.stop = std::stod(rhs.substr(c1 + 1, c2 - c1 - 1));
    ax.count = std::stoi(rhs.substr(c2 + 1));
    if (ax.count < 1) throw std::invalid_argument("axis count must be >= 1");
    return ax;
}

// Set the real or imaginary part of a [re,im] leaf addressed by a dotted path.
void set_axis_value(nlohmann::json& point, const AxisSpec& ax, double value) {
    nlohmann::json* node = &point;
    std::string path = ax.path;
    for (;;) {
        const auto dot = path.find('.');
        const std::string head = path.substr(0, dot);
        if (dot == std::string::npos) {
            nlohmann::json& leaf = (*node)[head];
            if (!leaf.is_array()) leaf = {0.0, 0.0};
            leaf[ax.imag ? 1 : 0] = value;
            return;
        }
        node = &(*node)[head];
        path = path.substr(dot + 1);
    }
}

int run_eval(const std::string& fn, const std::string& point) {
    try {
        std::cout << jf::eval_function(fn, point);
        return 0;
    } catch (const jf::UnknownFunctionError& e) {
        error_json("unknown_function", e.what());
        return kExitUnknownFunction;
    } catch (const jf::PoleError& e) {
        error_json("pole", e.what());
        return kExitDomain;
    } catch (const jf::DomainError& e) {
        error_json("domain", e.what());
        return kExitDomain;
    } catch (const jf::ConvergenceError& e) {
        error_json("convergence", e.what());
        return kExitConvergence;
    } catch (const jf::NoConvergenceError& e) {
        error_json("convergence", e.what());
        return kExitConvergence;
    } catch (const jf::JacobianSingularError& e) {
        error_json("convergence", e.what());
        return kExitConvergence;
    } catch (const std::exception& e) {
        error_json("invalid_input", e.what());
        return kExitDomain;
    }
}

int run_verify(std::uint64_t seed, int samples, const std::vector<std::string>& tols,
               const std::string& out, bool json_only) {
    jf::SuiteConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    for (const auto& t : tols) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            error_json("invalid_input", "--tol expects name=value");
            return kExitDomain;
        }
        cfg.tol_overrides[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    }

    jf::VerificationReport report;
    try {
        report = jf::run_suite(cfg);
    } catch (const std::exception& e) {
        error_json("invalid_input", e.what());
        return kExitDomain;
    }

    const std::string doc = jf::report_to_json(report);
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        f << doc;
    }
    if (json_only) {
        std::cout << doc;
    } else {
        for (const auto& c : report.checks) {
            std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name
                      << "  max_residual=" << fmt17(c.max_residual)
                      << "  tol=" << fmt17(c.tolerance)
                      << "  samples=" << c.samples << "\n";
        }
        std::cout << (report.pass ? "OK" : "FAILED") << " (" << report.checks.size()
                  << " checks, seed " << report.seed << ")\n";
    }
    return report.pass ? 0 : kExitVerifyFailed;
}

int run_grid(const std::string& fn, const std::vector<std::string>& axes_text,
             const std::string& point, const std::string& out) {
    std::vector<AxisSpec> axes;
    try {
        for (const auto& a : axes_text) axes.push_back(parse_axis(a));
        if (axes.empty() || axes.size() > 2) {
            throw std::invalid_argument("grid needs 1 or 2 --axis specs");
        }
    } catch (const std::exception& e) {
        error_json("invalid_axis", e.what());
        return kExitDomain;
    }

    nlohmann::json base;
    try {
        base = point.empty() ? nlohmann::json::object() : nlohmann::json::parse(point);
    } catch (const std::exception& e) {
        error_json("invalid_input", e.what());
        return kExitDomain;
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.empty()) {
        file.open(out, std::ios::binary);
        os = &file;
    }

    std::string header = axes[0].path + (axes[0].imag ? ".im" : "");
    if (axes.size() == 2) header += "," + axes[1].path + (axes[1].imag ? ".im" : "");
    *os << header << ",re,im\n";

    auto value_at = [&](int i, int j) -> std::string {
        nlohmann::json pt = base;
        auto coord = [](const AxisSpec& ax, int k) {
            return ax.count == 1 ? ax.start
                                 : ax.start + (ax.stop - ax.start) * k / (ax.count - 1);
        };
        const double x = coord(axes[0], i);
        set_axis_value(pt, axes[0], x);
        std::string row = fmt17(x);
        if (axes.size() == 2) {
            const double y = coord(axes[1], j);
            set_axis_value(pt, axes[1], y);
            row += "," + fmt17(y);
        }
        try {
            const auto res = nlohmann::json::parse(jf::eval_function(fn, pt.dump()));
            const auto& v = res.at("value");
            if (v.is_array()) {
                row += "," + fmt17(v.at(0).get<double>()) + "," + fmt17(v.at(1).get<double>());
            } else {
                row += "," + fmt17(v.get<double>()) + ",";
            }
        } catch (const jf::UnknownFunctionError&) {
            throw;
        } catch (const std::exception&) {
            row += ",,";  // pole or domain error: empty cells
        }
        return row;
    };

    try {
        const int nj = axes.size() == 2 ? axes[1].count : 1;
        for (int i = 0; i < axes[0].count; ++i) {
            for (int j = 0; j < nj; ++j) {
                *os << value_at(i, j) << "\n";
            }
        }
    } catch (const jf::UnknownFunctionError& e) {
        error_json("unknown_function", e.what());
        return kExitUnknownFunction;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jacobi-form special functions, group orbits and WDVV verification"};
    app.require_subcommand(1);

    std::string fn, point, out;
    std::uint64_t seed = 42;
    int samples = 50;
    std::vector<std::string> tols, axes;
    bool json_only = false;

    auto* eval = app.add_subcommand("eval", "evaluate a function at a point");
    eval->add_option("function", fn, "function name")->required();
    eval->add_option("--point", point, "point as JSON");
    eval->add_flag("--json", json_only, "JSON output (default)");

    auto* verify = app.add_subcommand("verify", "run the seeded verification suite");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--samples", samples, "sample budget (50 = baseline counts)");
    verify->add_option("--tol", tols, "tolerance override name=value (repeatable)");
    verify->add_option("--out", out, "write the JSON report here");
    verify->add_flag("--json", json_only, "print the JSON report instead of the table");

    auto* grid = app.add_subcommand("grid", "sweep a function over 1 or 2 axes, CSV output");
    grid->add_option("function", fn, "function name")->required();
    grid->add_option("--axis", axes, "axis spec name=start:stop:count (repeatable, max 2)");
    grid->add_option("--point", point, "fixed part of the point as JSON");
    grid->add_option("--out", out, "output CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (eval->parsed()) return run_eval(fn, point);
    if (verify->parsed()) return run_verify(seed, samples, tols, out, json_only);
    return run_grid(fn, axes, point, out);
}
