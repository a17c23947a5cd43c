#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilt/grid.hpp"
#include "ilt/optics.hpp"
#include "ilt/solver.hpp"

namespace ilt::io {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads a target pattern from a plain-text 0/1 grid or a P2/P5 PGM.
/// PGM pixels >= maxval / 2 become 1.
BinaryPattern load_pattern(const std::filesystem::path& path);
BinaryPattern parse_pattern_text(const std::string& text, const std::string& origin = "<text>");

/// Reads a continuous grid from the text format written by save_grid(Text).
RealGrid load_grid_text(const std::filesystem::path& path);

/// Loads a mask: text grids keep their real values, PGM pixels are scaled to [0, 1].
RealGrid load_mask(const std::filesystem::path& path);

enum class SaveMode { Binary, Continuous, Text };

SaveMode parse_save_mode(const std::string& name);

/// Binary: PGM with values {0, 255}, pixels >= 0.5 map to 255.
/// Continuous: PGM rescaled linearly from [min, max]; the range is recorded in a comment.
/// Text: one row per line, full double precision.
void save_grid(const RealGrid& grid, const std::filesystem::path& path, SaveMode mode);

inline constexpr const char* kHistoryHeader = "iter,lagrangian,epe_error,primal_residual,step_accepted";

void write_history(const std::vector<ConvergenceRecord>& records, const std::filesystem::path& path);
std::vector<ConvergenceRecord> read_history(const std::filesystem::path& path);

struct RunConfig {
    OpticsConfig optics;
    SolverConfig solver;
    std::filesystem::path input_path;
    std::filesystem::path output_dir = ".";
    std::uint64_t seed = 0;

    void validate() const;
};

/// Flat key=value lines; '#' starts a comment. Unknown keys are errors.
std::map<std::string, std::string> parse_key_values(const std::string& text, const std::string& origin);
void apply_key_values(RunConfig& cfg, const std::map<std::string, std::string>& values);
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);
std::string to_key_values(const RunConfig& cfg);

}  // namespace ilt::io
