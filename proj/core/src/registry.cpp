#include "jf/registry.hpp"

#include "jf/forms.hpp"
#include "jf/frobenius.hpp"
#include "jf/group.hpp"
#include "jf/theta.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace jf {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string enc(cplx z) {
    return "[" + fmt17(z.real()) + ", " + fmt17(z.imag()) + "]";
}

std::string enc_value(cplx z) { return "{\"value\": " + enc(z) + "}\n"; }
std::string enc_real(double x) { return "{\"value\": " + fmt17(x) + "}\n"; }

std::string enc_matrix(const Metric4& m) {
    std::ostringstream os;
    os << "{\"matrix\": [";
    for (int a = 0; a < 4; ++a) {
        os << (a ? ", [" : "[");
        for (int b = 0; b < 4; ++b) os << (b ? ", " : "") << enc(m(a, b));
        os << "]";
    }
    os << "]}\n";
    return os.str();
}

std::string enc_tensor(const ThirdDerivTensor& c) {
    std::ostringstream os;
    os << "{\"tensor\": [";
    for (int a = 0; a < 4; ++a) {
        os << (a ? ", [" : "[");
        for (int b = 0; b < 4; ++b) {
            os << (b ? ", [" : "[");
            for (int g = 0; g < 4; ++g) os << (g ? ", " : "") << enc(c(a, b, g));
            os << "]";
        }
        os << "]";
    }
    os << "]}\n";
    return os.str();
}

std::string enc_tensor(const StructureConstants& c) {
    std::ostringstream os;
    os << "{\"tensor\": [";
    for (int a = 0; a < 4; ++a) {
        os << (a ? ", [" : "[");
        for (int b = 0; b < 4; ++b) {
            os << (b ? ", [" : "[");
            for (int g = 0; g < 4; ++g) os << (g ? ", " : "") << enc(c(a, b, g));
            os << "]";
        }
        os << "]";
    }
    os << "]}\n";
    return os.str();
}

std::string enc_point(const DomainPoint& p) {
    return "{\"point\": {\"u\": " + enc(p.u) + ", \"v0\": " + enc(p.v0) +
           ", \"v2\": " + enc(p.v2) + ", \"tau\": " + enc(p.tau) + "}}\n";
}

std::string enc_flat(const FlatPoint& t) {
    return "{\"t\": [" + enc(t.t1) + ", " + enc(t.t2) + ", " + enc(t.t3) + ", " + enc(t.t4) + "]}\n";
}

cplx get_cplx(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    return {v.at(0).get<double>(), v.at(1).get<double>()};
}

DomainPoint get_point(const json& j, const std::string& key = "p") {
    const auto& v = j.at(key);
    return {get_cplx(v, "u"), get_cplx(v, "v0"), get_cplx(v, "v2"), get_cplx(v, "tau")};
}

FlatPoint get_flat(const json& j, const std::string& key = "t") {
    const auto& v = j.at(key);
    auto c = [&](int i) { return cplx{v.at(i).at(0).get<double>(), v.at(i).at(1).get<double>()}; };
    return {c(0), c(1), c(2), c(3)};
}

GroupElement get_group(const json& j, const std::string& key = "g") {
    return group_element_from_json(j.at(key).dump());
}

SeriesConfig get_cfg(const json& j) {
    SeriesConfig cfg;
    if (j.contains("cfg")) {
        const auto& c = j.at("cfg");
        if (c.contains("tol")) cfg.tol = c.at("tol").get<double>();
        if (c.contains("max_terms")) cfg.max_terms = c.at("max_terms").get<int>();
        if (c.contains("im_tau_min")) cfg.im_tau_min = c.at("im_tau_min").get<double>();
    }
    return cfg;
}

using EvalFn = std::function<std::string(const json&)>;

const std::map<std::string, EvalFn>& registry() {
    static const std::map<std::string, EvalFn> reg = {
        {"theta1", [](const json& j) {
             return enc_value(theta1(get_cplx(j, "v"), get_cplx(j, "tau"), get_cfg(j)));
         }},
        {"theta1_dv", [](const json& j) {
             return enc_value(theta1_dv(get_cplx(j, "v"), get_cplx(j, "tau"),
                                        j.at("order").get<int>(), get_cfg(j)));
         }},
        {"theta1_dtau", [](const json& j) {
             return enc_value(theta1_dtau(get_cplx(j, "v"), get_cplx(j, "tau"), get_cfg(j)));
         }},
        {"g1", [](const json& j) { return enc_value(g1(get_cplx(j, "tau"), get_cfg(j))); }},
        {"eisenstein_e2", [](const json& j) {
             return enc_value(eisenstein_e2(get_cplx(j, "tau"), get_cfg(j)));
         }},
        {"wp", [](const json& j) {
             return enc_value(wp(get_cplx(j, "v"), get_cplx(j, "tau"), get_cfg(j)));
         }},
        {"wp_dv", [](const json& j) {
             return enc_value(wp_dv(get_cplx(j, "v"), get_cplx(j, "tau"), get_cfg(j)));
         }},
        {"wzeta", [](const json& j) {
             return enc_value(wzeta(get_cplx(j, "v"), get_cplx(j, "tau"), get_cfg(j)));
         }},
        {"wsigma", [](const json& j) {
             return enc_value(wsigma(get_cplx(j, "v"), get_cplx(j, "tau"), get_cfg(j)));
         }},
        {"quadratic_form", [](const json& j) {
             return enc_value(quadratic_form(get_cplx(j, "v0"), get_cplx(j, "v2")));
         }},
        {"act", [](const json& j) { return enc_point(act(get_group(j), get_point(j))); }},
        {"compose", [](const json& j) {
             const GroupElement r = compose(get_group(j, "g1"), get_group(j, "g2"));
             return "{\"group\": " + to_json(r) + "}\n";
         }},
        {"inverse", [](const json& j) {
             return "{\"group\": " + to_json(inverse(get_group(j))) + "}\n";
         }},
        {"conformal_factor", [](const json& j) {
             return enc_value(conformal_factor(get_group(j), get_point(j)));
         }},
        {"phi1", [](const json& j) { return enc_value(phi1(get_point(j), get_cfg(j))); }},
        {"phi0", [](const json& j) { return enc_value(phi0(get_point(j), get_cfg(j))); }},
        {"superpotential", [](const json& j) {
             return enc_value(superpotential(get_cplx(j, "v"), get_point(j), get_cfg(j)));
         }},
        {"invariance_residual", [](const json& j) {
             return enc_real(invariance_residual(get_group(j), get_point(j), get_cplx(j, "v"), get_cfg(j)));
         }},
        {"generating_function", [](const json& j) {
             return enc_value(generating_function(get_cplx(j, "z"), get_point(j), get_cfg(j)));
         }},
        {"flat_from_domain", [](const json& j) {
             return enc_flat(flat_from_domain(get_point(j), get_cfg(j)));
         }},
        {"domain_from_flat", [](const json& j) {
             return enc_point(domain_from_flat(get_flat(j), get_point(j, "guess"), get_cfg(j)));
         }},
        {"intersection_form_domain", [](const json&) {
             return enc_matrix(intersection_form_domain());
         }},
        {"intersection_form_flat", [](const json& j) {
             return enc_matrix(intersection_form_flat(get_flat(j), get_cfg(j)));
         }},
        {"intersection_form_pushforward", [](const json& j) {
             return enc_matrix(intersection_form_pushforward(get_point(j), get_cfg(j)));
         }},
        {"saito_metric", [](const json&) { return enc_matrix(saito_metric()); }},
        {"saito_metric_lowered", [](const json&) { return enc_matrix(saito_metric_lowered()); }},
        {"free_energy", [](const json& j) {
             return enc_value(free_energy(get_flat(j), get_cfg(j)));
         }},
        {"third_derivatives", [](const json& j) {
             return enc_tensor(third_derivatives(get_flat(j), get_cfg(j)));
         }},
        {"structure_constants", [](const json& j) {
             return enc_tensor(structure_constants(get_flat(j), get_cfg(j)));
         }},
        {"wdvv_residual", [](const json& j) {
             return enc_real(wdvv_residual(get_flat(j), get_cfg(j)));
         }},
        {"euler_residual", [](const json& j) {
             return enc_real(euler_residual(get_flat(j), get_cfg(j)));
         }},
        {"det_jacobian", [](const json& j) {
             return enc_value(det_jacobian(get_point(j), get_cfg(j)));
         }},
        {"canonical_spectrum", [](const json& j) {
             const auto ev = canonical_spectrum(get_flat(j), get_cfg(j));
             return "{\"values\": [" + enc(ev[0]) + ", " + enc(ev[1]) + ", " + enc(ev[2]) +
                    ", " + enc(ev[3]) + "]}\n";
         }},
        {"metric_potential_residual", [](const json& j) {
             return enc_real(metric_potential_residual(get_flat(j), get_cfg(j)));
         }},
    };
    return reg;
}

}  // namespace

std::vector<std::string> eval_function_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

std::string eval_function(const std::string& name, const std::string& point_json) {
    const auto it = registry().find(name);
    if (it == registry().end()) throw UnknownFunctionError(name);
    const json j = point_json.empty() ? json::object() : json::parse(point_json);
    return it->second(j);
}

}  // namespace jf
