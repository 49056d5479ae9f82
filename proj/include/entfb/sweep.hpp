#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "entfb/optimize.hpp"

namespace entfb {

/// One row of a (chi, eta) sweep; the unit of CSV output.
struct SweepRecord {
    double chi = 0.0;
    double eta = 0.0;
    double lambda_star = 0.0;
    double l_fb = 0.0;
    double l_nofb = 0.0;
    double epr_variance_nofb = 0.0;
    double zeta = 0.0;  // smallest PT symplectic eigenvalue at lambda_star
};

/// Shortest decimal form with 12 significant digits, locale-independent.
std::string format_sig12(double value);

std::string sweep_csv_header();  // no trailing newline
std::string to_csv_row(const SweepRecord& rec);

SweepRecord evaluate_sweep_point(double chi, double eta,
                                 const OptimizerConfig& cfg = OptimizerConfig{});

/// chi-major order: all etas for chi_min, then the next chi, and so on.
std::vector<SweepRecord> run_sweep(double chi_min, double chi_max, int chi_steps,
                                   const std::vector<double>& etas,
                                   const OptimizerConfig& cfg = OptimizerConfig{});

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);

std::vector<SweepRecord> parse_sweep_csv(std::istream& in);

}  // namespace entfb
