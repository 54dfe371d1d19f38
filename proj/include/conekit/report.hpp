#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace conekit {

using Json = nlohmann::json;

/// Serializes with numbers printed at 17 significant digits so equal inputs
/// produce byte-identical reports.
std::string dump_report(const Json& j, int indent = 2);

void write_report(const Json& j, const std::string& path);
Json read_report(const std::string& path);

struct MergeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Combines run reports into one document keyed by run id, with summary
/// tables of the monitored estimate constants and Cauchy differences.
Json report_merge(const std::vector<std::string>& paths);

/// Flat binary grid: magic line, dims line, then row-major little-endian
/// float64 payload.
void write_grid_binary(const std::string& path, const Eigen::VectorXd& data, int rows, int cols);
Eigen::VectorXd read_grid_binary(const std::string& path, int& rows, int& cols);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace conekit
