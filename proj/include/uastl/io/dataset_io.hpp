#pragma once

// Dataset file formats. JSON is canonical:
//
//   {"dims": n, "length": J+1,
//    "entries": [{"label": 1|-1,
//                 "lower": [[real; n]; J+1], "upper": [[real; n]; J+1]}]}
//
// Point datasets use "values" in place of lower/upper. CSV ingestion uses a
// long format with one row per (entry, timestep):
//
//   entry,label,t,x1_lo,x1_hi[,x2_lo,x2_hi,...]     (interval)
//   entry,label,t,x1[,x2,...]                       (point)

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "uastl/core.hpp"

namespace uastl {

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- JSON ----------------------------------------------------------------------

inline nlohmann::json dataset_to_json(const LabeledDataset& d) {
    nlohmann::json out;
    out["dims"] = d.dims();
    out["length"] = d.length();
    out["entries"] = nlohmann::json::array();
    for (const auto& [it, l] : d.entries()) {
        nlohmann::json e;
        e["label"] = label_sign(l);
        nlohmann::json lower = nlohmann::json::array(), upper = nlohmann::json::array();
        for (std::size_t j = 0; j < it.length(); ++j) {
            nlohmann::json lo_row = nlohmann::json::array(), hi_row = nlohmann::json::array();
            for (std::size_t k = 0; k < it.dims(); ++k) {
                lo_row.push_back(it.at(j)[k].lo);
                hi_row.push_back(it.at(j)[k].hi);
            }
            lower.push_back(std::move(lo_row));
            upper.push_back(std::move(hi_row));
        }
        e["lower"] = std::move(lower);
        e["upper"] = std::move(upper);
        out["entries"].push_back(std::move(e));
    }
    return out;
}

inline nlohmann::json dataset_to_json(const PointDataset& d) {
    nlohmann::json out;
    out["dims"] = d.dims();
    out["length"] = d.length();
    out["entries"] = nlohmann::json::array();
    for (const auto& [t, l] : d.entries()) {
        nlohmann::json e;
        e["label"] = label_sign(l);
        e["values"] = t.values();
        out["entries"].push_back(std::move(e));
    }
    return out;
}

namespace detail {

inline std::vector<std::vector<double>> json_matrix(const nlohmann::json& m, std::size_t rows,
                                                    std::size_t cols, const char* what) {
    if (!m.is_array() || m.size() != rows)
        throw DataError(std::string(what) + ": expected " + std::to_string(rows) + " rows");
    std::vector<std::vector<double>> out;
    out.reserve(rows);
    for (const auto& row : m) {
        if (!row.is_array() || row.size() != cols)
            throw DataError(std::string(what) + ": expected " + std::to_string(cols) +
                            " columns per row");
        out.push_back(row.get<std::vector<double>>());
    }
    return out;
}

}  // namespace detail

inline bool json_is_point_dataset(const nlohmann::json& j) {
    return j.contains("entries") && !j["entries"].empty() &&
           j["entries"][0].contains("values");
}

inline LabeledDataset dataset_from_json(const nlohmann::json& j) {
    if (!j.contains("dims") || !j.contains("length") || !j.contains("entries"))
        throw DataError("dataset: missing dims/length/entries");
    const auto dims = j["dims"].get<std::size_t>();
    const auto length = j["length"].get<std::size_t>();
    LabeledDataset d;
    for (const auto& e : j["entries"]) {
        Label l = label_from_int(e.at("label").get<int>());
        auto lower = detail::json_matrix(e.at("lower"), length, dims, "lower");
        auto upper = detail::json_matrix(e.at("upper"), length, dims, "upper");
        std::vector<std::vector<Interval>> boxes(length);
        for (std::size_t t = 0; t < length; ++t)
            for (std::size_t k = 0; k < dims; ++k) {
                if (lower[t][k] > upper[t][k])
                    throw DataError("dataset: lower bound above upper bound");
                boxes[t].emplace_back(lower[t][k], upper[t][k]);
            }
        d.push_back(IntervalTrajectory(std::move(boxes)), l);
    }
    if (d.empty()) throw DataError("dataset: no entries");
    return d;
}

inline PointDataset point_dataset_from_json(const nlohmann::json& j) {
    if (!j.contains("dims") || !j.contains("length") || !j.contains("entries"))
        throw DataError("dataset: missing dims/length/entries");
    const auto dims = j["dims"].get<std::size_t>();
    const auto length = j["length"].get<std::size_t>();
    PointDataset d;
    for (const auto& e : j["entries"]) {
        Label l = label_from_int(e.at("label").get<int>());
        d.push_back(Trajectory(detail::json_matrix(e.at("values"), length, dims, "values")), l);
    }
    if (d.empty()) throw DataError("dataset: no entries");
    return d;
}

// ---- CSV -----------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

struct CsvRows {
    // entry id -> (label, t -> row values)
    std::map<long, std::pair<int, std::map<long, std::vector<double>>>> rows;
    std::size_t value_cols = 0;
};

inline CsvRows read_csv_rows(std::istream& in) {
    CsvRows out;
    std::string line;
    bool header_skipped = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto fields = csv_split(line);
        if (!header_skipped) {
            header_skipped = true;
            // Header row when the first field is not numeric.
            char* end = nullptr;
            std::strtod(fields[0].c_str(), &end);
            if (end == fields[0].c_str()) continue;
        }
        if (fields.size() < 4)
            throw DataError("csv: line " + std::to_string(lineno) + ": too few columns");
        long entry = std::strtol(fields[0].c_str(), nullptr, 10);
        int label = static_cast<int>(std::strtol(fields[1].c_str(), nullptr, 10));
        long t = std::strtol(fields[2].c_str(), nullptr, 10);
        std::vector<double> values;
        for (std::size_t i = 3; i < fields.size(); ++i)
            values.push_back(std::strtod(fields[i].c_str(), nullptr));
        if (out.value_cols == 0) out.value_cols = values.size();
        if (values.size() != out.value_cols)
            throw DataError("csv: line " + std::to_string(lineno) + ": ragged columns");
        out.rows[entry].first = label;
        out.rows[entry].second[t] = std::move(values);
    }
    if (out.rows.empty()) throw DataError("csv: no data rows");
    return out;
}

}  // namespace detail

inline LabeledDataset interval_dataset_from_csv(std::istream& in) {
    auto csv = detail::read_csv_rows(in);
    if (csv.value_cols % 2 != 0)
        throw DataError("csv: interval data needs lo/hi column pairs");
    const std::size_t dims = csv.value_cols / 2;
    LabeledDataset d;
    for (auto& [id, entry] : csv.rows) {
        std::vector<std::vector<Interval>> boxes;
        for (auto& [t, row] : entry.second) {
            std::vector<Interval> box;
            for (std::size_t k = 0; k < dims; ++k) {
                if (row[2 * k] > row[2 * k + 1])
                    throw DataError("csv: lower bound above upper bound");
                box.emplace_back(row[2 * k], row[2 * k + 1]);
            }
            boxes.push_back(std::move(box));
        }
        d.push_back(IntervalTrajectory(std::move(boxes)), label_from_int(entry.first));
    }
    return d;
}

inline PointDataset point_dataset_from_csv(std::istream& in) {
    auto csv = detail::read_csv_rows(in);
    PointDataset d;
    for (auto& [id, entry] : csv.rows) {
        std::vector<std::vector<double>> values;
        for (auto& [t, row] : entry.second) values.push_back(row);
        d.push_back(Trajectory(std::move(values)), label_from_int(entry.first));
    }
    return d;
}

// ---- files ----------------------------------------------------------------------

namespace detail {

inline bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace detail

inline LabeledDataset load_interval_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    if (detail::ends_with(path, ".csv")) return interval_dataset_from_csv(in);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw DataError(path + ": " + ex.what());
    }
    return dataset_from_json(j);
}

inline PointDataset load_point_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    if (detail::ends_with(path, ".csv")) return point_dataset_from_csv(in);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw DataError(path + ": " + ex.what());
    }
    return point_dataset_from_json(j);
}

inline void save_dataset(const LabeledDataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << dataset_to_json(d).dump(2) << "\n";
}

inline void save_dataset(const PointDataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << dataset_to_json(d).dump(2) << "\n";
}

}  // namespace uastl
