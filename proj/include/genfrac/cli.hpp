#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "genfrac/kernel.hpp"
#include "genfrac/laplace_inversion.hpp"

namespace genfrac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// {"type": "single", "alpha": a} | {"type": "multi", "terms": [[c, a], ...]} |
/// {"type": "distributed-uniform"} | {"type": "custom", "g": "<expression in s>"}.
/// Unknown keys and malformed values throw ValidationError.
KernelSpec kernel_from_json(const nlohmann::json& j);
nlohmann::json kernel_to_json(const KernelSpec& k);

/// Reads "ilt_method", "ilt_nodes", "ilt_tol" from a config object (all optional).
ContourConfig contour_from_json(const nlohmann::json& j);

/// Runs one subcommand. args excludes the program name. Diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace genfrac::cli
