#pragma once

#include <filesystem>
#include <ostream>

#include "pbfv/config.hpp"

namespace pbfv {

// Each command writes its CSV files into `out` and prints one
// "FAIL check=<name> value=<v> limit=<l>" line per violated gate on `report`.
// Returns the process exit status: 0 iff every gate passes.
int cmd_run(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& report);
int cmd_convergence(const ExperimentConfig& cfg, const std::filesystem::path& out,
                    std::ostream& report);
int cmd_probe_flux(const ExperimentConfig& cfg, const std::filesystem::path& out,
                   std::ostream& report);
int cmd_probe_germ(const ExperimentConfig& cfg, const std::filesystem::path& out,
                   std::ostream& report);

}  // namespace pbfv
