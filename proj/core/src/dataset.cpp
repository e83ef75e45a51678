#include "lofit/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "lofit/errors.hpp"

namespace lofit {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // Trim surrounding whitespace.
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos ? std::string{}
                                                    : field.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_number(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw domain_error("malformed numeric field '" + s + "' in " + context);
    }
}

}  // namespace

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw domain_error("empty dataset file: " + path);
    const auto header = split_csv_line(line);
    if (header.size() < 2) throw domain_error("dataset header needs at least one covariate and a response: " + path);
    if (header.back() != "y") throw domain_error("last dataset column must be named 'y': " + path);
    const int d = static_cast<int>(header.size()) - 1;

    std::vector<std::vector<double>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != d + 1)
            throw domain_error("row " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                               " fields, expected " + std::to_string(d + 1) + ": " + path);
        std::vector<double> row(d + 1);
        for (int j = 0; j <= d; ++j)
            row[j] = parse_number(fields[j], path + ":" + std::to_string(line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw domain_error("dataset has no observations: " + path);

    Dataset out;
    const int n = static_cast<int>(rows.size());
    out.x.resize(n, d);
    out.y.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) out.x(i, j) = rows[i][j];
        out.y(i) = rows[i][d];
    }
    return out;
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw domain_error("cannot open file for writing: " + path);
    out.precision(17);
    for (int j = 0; j < data.d(); ++j) out << "x" << (j + 1) << ",";
    out << "y\n";
    for (int i = 0; i < data.n(); ++i) {
        for (int j = 0; j < data.d(); ++j) out << data.x(i, j) << ",";
        out << data.y(i) << "\n";
    }
}

}  // namespace lofit
