#ifndef JF_VERIFY_HPP
#define JF_VERIFY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jf/group.hpp"
#include "jf/rng.hpp"
#include "jf/frobenius.hpp"
#include "jf/types.hpp"

namespace jf {

/// Configuration for the verification suite. The sampling box keeps every
/// point well inside the series/pole guards: Im tau in [0.8, 2], |Re tau|
/// <= 0.4, |v0| <= 0.4, |u| <= 0.3, v2 at distance >= 0.05 from the
/// half-lattice.
struct SuiteConfig {
    std::uint64_t seed = 42;
    int samples = 50;
    std::map<std::string, double> tol_overrides;
    SeriesConfig series;

    void validate() const {
        if (samples < 1) throw std::invalid_argument("SuiteConfig: samples must be >= 1");
        for (const auto& [name, tol] : tol_overrides) {
            if (!(tol > 0.0)) throw std::invalid_argument("SuiteConfig: tolerance override for '" + name + "' must be > 0");
        }
        series.validate();
    }
};

struct CheckResult {
    std::string name;
    std::string identity;   // the relation being checked, human-readable
    int samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::uint64_t seed = 0;
    int samples = 0;
    double wall_time_seconds = 0.0;
    std::string version;
    std::vector<CheckResult> checks;   // sorted by name
    bool pass = false;
};

/// Names of all suite checks, in run (= report) order.
std::vector<std::string> check_names();

/// Run the full suite with seeded sampling. Deterministic for a fixed seed
/// apart from wall_time_seconds.
VerificationReport run_suite(const SuiteConfig& cfg);

/// Report as JSON with 17-significant-digit numbers (round-trip exact).
std::string report_to_json(const VerificationReport& report);

/// Seeded sample points used by the suite (exposed so tests can replay them).
DomainPoint sample_domain_point(SplitMix64& rng);
FlatPoint sample_flat_point(SplitMix64& rng);
GroupElement sample_group_element(SplitMix64& rng, int max_word_len = 3);

inline const char* kVersion = "0.1.0";

}  // namespace jf

#endif
