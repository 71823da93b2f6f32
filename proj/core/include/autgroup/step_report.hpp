#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace autgroup {

/// Instrumented run of a stage-based solver. One step is one symbol read or
/// written on any simulated tape.
struct StepReport {
  std::string solver;
  std::size_t input_length = 0;
  std::size_t stages = 0;
  /// Tape length at the start of each stage.
  std::vector<std::size_t> tape_lengths;
  /// Longest segment (identity letters not counted) at the start of each stage.
  std::vector<std::size_t> max_segment;
  std::uint64_t steps = 0;
  bool accepted = false;
};

/// Single-line JSON object with every field of the report.
std::string to_json(const StepReport& report);

}  // namespace autgroup
