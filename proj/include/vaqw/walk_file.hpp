// JSON walk-spec documents.
//
//   {
//     "dimension": d, "index": l, "coin_dim": s,
//     "generators": [{"name": "a", "inverse": "a^-1"}, ...],
//     "relators": [["a", "a", ...], ...],
//     "representatives": [[], ["a"], ...],          // c_0 must be []
//     "basis": [["a^-1", "b"], ...],                 // optional
//     "table": [{"generator": "a", "coset": 0, "target": 3, "shift": [0, 0]}, ...],
//     "transitions": {"a": [[[re, im], ...], ...], ...},
//     "isotropy": {"map": {"a": "b", ...}, "coin_unitary": [[[re, im], ...], ...]}  // optional
//   }
//
// Export writes fields in this order, table rows generator-major, and doubles
// in shortest round-trip form, so export -> parse -> export is byte-identical.
#ifndef VAQW_WALK_FILE_HPP
#define VAQW_WALK_FILE_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vaqw/walk.hpp"

namespace vaqw {

class WalkFileError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct WalkFile {
  WalkSpec walk;
  std::optional<IsotropySpec> isotropy;
};

/// Structural problems (bad JSON, missing or mistyped fields, incomplete
/// tables) throw WalkFileError naming the line or field. Group-theoretic
/// consistency is left to validate_tiling.
WalkFile parse_walk_file(std::string_view text);
WalkFile load_walk_file(const std::filesystem::path& path);

std::string export_walk_file(const WalkSpec& w, const std::optional<IsotropySpec>& isotropy = std::nullopt);
void save_walk_file(const std::filesystem::path& path, const WalkSpec& w,
                    const std::optional<IsotropySpec>& isotropy = std::nullopt);

}  // namespace vaqw

#endif  // VAQW_WALK_FILE_HPP
