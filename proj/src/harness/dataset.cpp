#include "modelgpt/harness/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "modelgpt/errors.hpp"

namespace modelgpt {

Batch gather(const Dataset& ds, const std::vector<int>& rows, const std::string& reader) {
    if (ds.log) ++ds.log->reads[reader];
    const int f = ds.n_features();
    Batch batch;
    batch.x = nn::Tensor({static_cast<int>(rows.size()), f});
    const bool regression = ds.task.kind == TaskKind::regression;
    if (regression) batch.targets = nn::Tensor({static_cast<int>(rows.size()), 1});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int r = rows[i];
        if (r < 0 || r >= ds.n_rows())
            throw InputError("batch row " + std::to_string(r) + " outside dataset " + ds.name);
        for (int j = 0; j < f; ++j) batch.x.at(static_cast<int>(i), j) = ds.features.at(r, j);
        if (regression)
            batch.targets.data[i] = ds.targets.data[r];
        else
            batch.labels.push_back(ds.labels[r]);
    }
    return batch;
}

void split_and_standardize(Dataset& ds, std::uint64_t seed) {
    const int n = ds.n_rows();
    const int f = ds.n_features();
    if (n < 3) throw InputError("dataset " + ds.name + " has only " + std::to_string(n) +
                                " rows, need at least 3 to split");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    const int n_train = static_cast<int>(0.70 * n);
    const int n_eval = static_cast<int>(0.15 * n);
    ds.train_idx.assign(order.begin(), order.begin() + n_train);
    ds.eval_idx.assign(order.begin() + n_train, order.begin() + n_train + n_eval);
    ds.test_idx.assign(order.begin() + n_train + n_eval, order.end());

    // column statistics from the train split only
    for (int j = 0; j < f; ++j) {
        double mean = 0.0;
        for (int r : ds.train_idx) mean += ds.features.at(r, j);
        mean /= ds.train_idx.size();
        double var = 0.0;
        for (int r : ds.train_idx) {
            const double d = ds.features.at(r, j) - mean;
            var += d * d;
        }
        var /= ds.train_idx.size();
        const double sd = var > 0.0 ? std::sqrt(var) : 1.0;
        for (int r = 0; r < n; ++r)
            ds.features.at(r, j) =
                static_cast<float>((ds.features.at(r, j) - mean) / sd);
    }
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    std::size_t used = 0;
    try {
        out = std::stod(cell, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == cell.size();
}

}  // namespace

Dataset load_csv_task(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open csv: " + path);

    std::string line;
    if (!std::getline(in, line)) throw IngestionError(path + " is empty, expected a header row");
    const std::vector<std::string> header = split_csv_line(line);
    const std::size_t n_cols = header.size();

    std::size_t label_col = n_cols - 1;
    if (!schema.label_column.empty()) {
        auto it = std::find(header.begin(), header.end(), schema.label_column);
        if (it == header.end())
            throw IngestionError(path + " has no column named '" + schema.label_column + "'");
        label_col = static_cast<std::size_t>(it - header.begin());
    }

    std::vector<std::vector<std::string>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != n_cols)
            throw IngestionError(path + " row " + std::to_string(line_no) + " has " +
                                 std::to_string(cells.size()) + " cells, header has " +
                                 std::to_string(n_cols));
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c].empty())
                throw IngestionError(path + " row " + std::to_string(line_no) + ", column " +
                                     std::to_string(c + 1) + " (" + header[c] + ") is empty");
        rows.push_back(std::move(cells));
    }
    if (rows.empty()) throw IngestionError(path + " has a header but no data rows");

    // feature columns: numeric if every cell parses, else one-hot categories
    // in order of first appearance
    struct Column {
        bool numeric = true;
        std::vector<std::string> categories;
    };
    std::vector<Column> cols(n_cols);
    for (std::size_t c = 0; c < n_cols; ++c) {
        if (c == label_col) continue;
        double v;
        for (const auto& row : rows)
            if (!parse_double(row[c], v)) {
                cols[c].numeric = false;
                break;
            }
        if (!cols[c].numeric)
            for (const auto& row : rows)
                if (std::find(cols[c].categories.begin(), cols[c].categories.end(), row[c]) ==
                    cols[c].categories.end())
                    cols[c].categories.push_back(row[c]);
    }

    int n_features = 0;
    for (std::size_t c = 0; c < n_cols; ++c) {
        if (c == label_col) continue;
        n_features += cols[c].numeric ? 1 : static_cast<int>(cols[c].categories.size());
    }

    Dataset ds;
    const auto slash = path.find_last_of("/\\");
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = stem.rfind('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);
    ds.name = stem;
    ds.domain_tag = stem + " data";
    ds.features = nn::Tensor({static_cast<int>(rows.size()), n_features});

    for (std::size_t r = 0; r < rows.size(); ++r) {
        int j = 0;
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (c == label_col) continue;
            if (cols[c].numeric) {
                double v;
                if (!parse_double(rows[r][c], v))
                    throw IngestionError(path + " row " + std::to_string(r + 2) + ", column " +
                                         std::to_string(c + 1) + " (" + header[c] +
                                         "): cannot parse '" + rows[r][c] + "'");
                ds.features.at(static_cast<int>(r), j++) = static_cast<float>(v);
            } else {
                for (const auto& cat : cols[c].categories)
                    ds.features.at(static_cast<int>(r), j++) = rows[r][c] == cat ? 1.0f : 0.0f;
            }
        }
    }

    if (schema.kind == TaskKind::classification) {
        std::set<std::string> distinct;
        for (const auto& row : rows) distinct.insert(row[label_col]);
        if (distinct.size() < 2)
            throw InputError(path + " label column '" + header[label_col] +
                             "' has a single value; classification needs at least 2");
        std::map<std::string, int> to_id;
        int next = 0;
        for (const auto& v : distinct) to_id[v] = next++;   // sorted order
        for (const auto& row : rows) ds.labels.push_back(to_id[row[label_col]]);
        ds.task = {TaskKind::classification, static_cast<int>(distinct.size()), n_features};
    } else {
        ds.targets = nn::Tensor({static_cast<int>(rows.size()), 1});
        for (std::size_t r = 0; r < rows.size(); ++r) {
            double v;
            if (!parse_double(rows[r][label_col], v))
                throw IngestionError(path + " row " + std::to_string(r + 2) + ", column " +
                                     std::to_string(label_col + 1) + " (" + header[label_col] +
                                     "): regression label '" + rows[r][label_col] +
                                     "' is not numeric");
            ds.targets.data[r] = static_cast<float>(v);
        }
        ds.task = {TaskKind::regression, 0, n_features};
    }

    split_and_standardize(ds, schema.split_seed);
    return ds;
}

}  // namespace modelgpt
