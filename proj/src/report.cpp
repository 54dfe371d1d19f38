#include "conekit/report.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace conekit {

namespace {

void dump_value(const Json& j, std::ostringstream& os, int indent, int depth) {
    std::string pad(std::size_t(indent) * depth, ' ');
    std::string pad_in(std::size_t(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                os << pad_in << Json(it.key()).dump() << ": ";
                dump_value(it.value(), os, indent, depth + 1);
                if (i + 1 < j.size()) os << ",";
                os << "\n";
            }
            os << pad << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                os << pad_in;
                dump_value(j[i], os, indent, depth + 1);
                if (i + 1 < j.size()) os << ",";
                os << "\n";
            }
            os << pad << "]";
            return;
        }
        case Json::value_t::number_float: {
            char buf[48];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            // keep it a JSON number
            if (!std::strpbrk(buf, ".eEn")) std::strcat(buf, ".0");
            if (std::strstr(buf, "inf") || std::strstr(buf, "nan")) os << "null";
            else os << buf;
            return;
        }
        default:
            os << j.dump();
            return;
    }
}

}  // namespace

std::string dump_report(const Json& j, int indent) {
    std::ostringstream os;
    dump_value(j, os, indent, 0);
    os << "\n";
    return os.str();
}

void write_report(const Json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw std::runtime_error("cannot write report " + path);
    out << dump_report(j);
}

Json read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw std::runtime_error("cannot read report " + path);
    Json j;
    in >> j;
    return j;
}

Json report_merge(const std::vector<std::string>& paths) {
    Json merged;
    merged["schema"] = 1;
    Json runs = Json::object();
    Json estimates = Json::array();
    Json cauchy = Json::array();
    std::map<std::string, std::string> seen;
    for (const auto& path : paths) {
        Json j = read_report(path);
        if (!j.contains("schema") || !j.contains("run_id") || !j.contains("command"))
            throw MergeError("not a run report (missing schema/run_id/command): " + path);
        std::string id = j["run_id"].get<std::string>();
        auto it = seen.find(id);
        if (it != seen.end())
            throw MergeError("conflicting run id '" + id + "' in " + it->second + " and " +
                             path);
        seen[id] = path;
        runs[id] = j;
        auto pull_estimates = [&](const Json& rep, double eps) {
            if (!rep.contains("monitor")) return;
            Json row;
            row["run_id"] = id;
            row["eps"] = eps;
            for (const char* k :
                 {"phi_sup", "lap_phi_sup", "f_inf", "lap_f_neg_inf", "curvature_inf"})
                if (rep["monitor"].contains(k)) row[k] = rep["monitor"][k];
            estimates.push_back(row);
        };
        if (j.contains("solve_report"))
            pull_estimates(j["solve_report"], j["solve_report"].value("eps", 0.0));
        if (j.contains("steps"))
            for (const auto& s : j["steps"]) {
                pull_estimates(s.value("report", Json::object()), s.value("eps", 0.0));
                if (s.contains("cauchy_diff")) {
                    Json row;
                    row["run_id"] = id;
                    row["eps"] = s.value("eps", 0.0);
                    row["cauchy_diff"] = s["cauchy_diff"];
                    cauchy.push_back(row);
                }
            }
    }
    std::sort(cauchy.begin(), cauchy.end(), [](const Json& a, const Json& b) {
        return a.value("eps", 0.0) > b.value("eps", 0.0);
    });
    merged["runs"] = runs;
    merged["estimate_table"] = estimates;
    merged["cauchy_table"] = cauchy;
    return merged;
}

void write_grid_binary(const std::string& path, const Eigen::VectorXd& data, int rows,
                       int cols) {
    if (Eigen::Index(rows) * cols != data.size())
        throw std::runtime_error("grid dims do not match payload");
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw std::runtime_error("cannot write " + path);
    out << "CKGRID1\n" << rows << " " << cols << "\n";
    // payload is little-endian float64 row-major (native on this target)
    out.write(reinterpret_cast<const char*>(data.data()),
              std::streamsize(sizeof(double)) * data.size());
}

Eigen::VectorXd read_grid_binary(const std::string& path, int& rows, int& cols) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw std::runtime_error("cannot read " + path);
    std::string magic;
    std::getline(in, magic);
    if (magic != "CKGRID1") throw std::runtime_error("bad grid magic in " + path);
    in >> rows >> cols;
    in.ignore(1);
    Eigen::VectorXd data(Eigen::Index(rows) * cols);
    in.read(reinterpret_cast<char*>(data.data()),
            std::streamsize(sizeof(double)) * data.size());
    if (!in.good()) throw std::runtime_error("truncated grid payload in " + path);
    return data;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out.good()) throw std::runtime_error("cannot write " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    char buf[48];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << "\n";
    }
}

}  // namespace conekit
