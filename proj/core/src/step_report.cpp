#include "autgroup/step_report.hpp"

#include <json.hpp>

namespace autgroup {

std::string to_json(const StepReport& report) {
  const nlohmann::json j = {
      {"solver", report.solver},
      {"input_length", report.input_length},
      {"stages", report.stages},
      {"tape_lengths", report.tape_lengths},
      {"max_segment", report.max_segment},
      {"steps", report.steps},
      {"verdict", report.accepted ? "accept" : "reject"},
  };
  return j.dump();
}

}  // namespace autgroup
