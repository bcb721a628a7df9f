#pragma once

// Parameter sweeps over at most two model parameters, written as CSV.
//
// Columns: index, one per varied parameter, status, J, gamma, a, alpha, beta,
// energies, weights, mu1, mu2, message. Energies and weights are ';'-joined
// 20-digit decimals. status is ok, config_error, not_qes or certification_error;
// a failing point fills message and leaves the numeric columns empty.

#include <string>
#include <vector>

#include "cli/config.hpp"

namespace qes::cli {

struct SweepAxis {
    std::string name;
    std::vector<std::string> values;  // exact text, "p/q" or integer
};

/// NAME=start:stop[:step] (inclusive, step defaults to 1) or NAME=v1,v2,...
SweepAxis parse_axis(const std::string& spec);

struct SweepRow {
    std::size_t index = 0;
    std::vector<std::string> values;
    std::string status;
    std::vector<std::string> fields;  // J, gamma, a, alpha, beta, energies, weights, mu1, mu2
    std::string message;
};

std::vector<std::string> sweep_header(const std::vector<SweepAxis>& axes);

/// Evaluates every grid point (row-major, first axis slowest) with up to
/// `jobs` threads; rows come back in grid order.
std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<SweepAxis>& axes, unsigned jobs = 1);

std::string sweep_csv(const std::vector<SweepAxis>& axes, const std::vector<SweepRow>& rows);

}  // namespace qes::cli
