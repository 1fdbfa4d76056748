#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pbfv/scheme.hpp"

namespace pbfv {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& msg);
    std::size_t line() const { return line_; }  // 0 for whole-document errors

private:
    std::size_t line_;
};

struct ExperimentConfig {
    SchemeConfig scheme;
    double dx = 0.01;
    std::optional<PiecewiseConstant> datum;
    bool riemann = false;  // datum given as u_minus / u_plus
    double h0 = 0.0;
    double v0 = 0.0;
    std::vector<double> snapshots;
    std::uint64_t seed = 0;

    // convergence
    std::vector<double> levels{0.04, 0.02, 0.01, 0.005};
    std::optional<double> reference_dx;

    // probes
    int probe_grid = 200;
    std::vector<double> probe_speeds{-1.0, 0.0, 1.0};
    double probe_half_box = 2.0;
    int probe_candidates = 1000;
    int probe_h_samples = 10000;
};

// Line-oriented "key = value" document with '#' comments.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

}  // namespace pbfv
