#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "knockout/contract.hpp"
#include "knockout/tables_data.hpp"

namespace knockout {

/// Raw text of the embedded benchmark table `id` (1..5). The tables are
/// versioned CSV files under data/, baked in at configure time.
inline std::string_view table_csv(int id) {
    switch (id) {
        case 1: return tables_data::kTable1Csv;
        case 2: return tables_data::kTable2Csv;
        case 3: return tables_data::kTable3Csv;
        case 4: return tables_data::kTable4Csv;
        case 5: return tables_data::kTable5Csv;
        default: throw ValidationError("table_csv: table id must be 1..5");
    }
}

/// Parses an embedded benchmark CSV: '#' lines are comments, the first
/// remaining line is the header, every other line is a numeric record.
inline std::vector<std::vector<double>> parse_table_csv(std::string_view csv) {
    std::vector<std::vector<double>> rows;
    std::istringstream in{std::string(csv)};
    std::string line;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_skipped) {
            header_skipped = true;
            continue;
        }
        std::vector<double> row;
        std::istringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            try {
                row.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw ValidationError("parse_table_csv: non-numeric field '" + field + "'");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

/// Parsed rows of benchmark table `id`.
inline std::vector<std::vector<double>> benchmark_table(int id) {
    return parse_table_csv(table_csv(id));
}

}  // namespace knockout
