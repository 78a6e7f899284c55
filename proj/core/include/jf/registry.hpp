#ifndef JF_REGISTRY_HPP
#define JF_REGISTRY_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace jf {

struct UnknownFunctionError : std::invalid_argument {
    explicit UnknownFunctionError(const std::string& name)
        : std::invalid_argument("unknown function: " + name) {}
};

/// Names of all functions callable through eval_function / the CLI.
std::vector<std::string> eval_function_names();

/// Evaluate a registered function at a JSON-encoded point and return the
/// result as JSON (complex numbers as [re, im] pairs, 17-significant-digit
/// decimals). The point document carries named fields, e.g.
///   theta1:      {"v": [0.2, 0.0], "tau": [0.0, 1.5]}
///   free_energy: {"t": [[re,im],[re,im],[re,im],[re,im]]}
///   act:         {"g": {...group element...}, "p": {"u": [..], "v0": [..], "v2": [..], "tau": [..]}}
/// An optional "cfg" object overrides SeriesConfig fields
/// (tol, max_terms, im_tau_min).
std::string eval_function(const std::string& name, const std::string& point_json);

}  // namespace jf

#endif
