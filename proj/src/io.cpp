#include "clrsc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace clrsc {

namespace fs = std::filesystem;

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

double parse_number(const std::string& token, const fs::path& path, std::size_t line,
                    std::size_t column) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    // Allow surrounding whitespace only.
    std::size_t rest = token.find_first_not_of(" \t\r", consumed);
    if (consumed == 0 || rest != std::string::npos) {
        throw DataError(path.string() + ":" + std::to_string(line) + ": column " +
                        std::to_string(column) + ": not a number: '" + token + "'");
    }
    return value;
}

std::vector<std::vector<double>> read_rows(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string token;
        std::size_t col = 0;
        while (std::getline(ss, token, ',')) {
            ++col;
            row.push_back(parse_number(token, path, lineno, col));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": ragged row, got " +
                            std::to_string(row.size()) + " fields, expected " +
                            std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError(path.string() + ": empty file");
    return rows;
}

}  // namespace

Matrix load_matrix_csv(const fs::path& path) {
    const auto rows = read_rows(path);
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

void write_matrix_csv(const Matrix& m, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path.string());
}

std::vector<int> load_labels(const fs::path& path) {
    const auto rows = read_rows(path);
    std::vector<int> labels;
    for (const auto& row : rows) {
        for (double v : row) {
            const int label = static_cast<int>(std::lround(v));
            if (label < 1 || std::abs(v - label) > 1e-9) {
                throw DataError(path.string() + ": labels must be positive integers");
            }
            labels.push_back(label);
        }
    }
    return labels;
}

void write_labels(const std::vector<int>& labels, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    for (int l : labels) out << l << '\n';
}

MultiViewDataset load_dataset(const fs::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw DataError("cannot open " + manifest_path.string());
    const fs::path base = manifest_path.parent_path();

    std::vector<fs::path> view_paths;
    fs::path labels_path;
    int k = 0;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DataError(manifest_path.string() + ":" + std::to_string(lineno) +
                            ": expected 'key = value'");
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "view") {
            view_paths.push_back(base / value);
        } else if (key == "labels") {
            labels_path = base / value;
        } else if (key == "k") {
            k = std::stoi(value);
        } else {
            throw DataError(manifest_path.string() + ":" + std::to_string(lineno) +
                            ": unknown key '" + key + "'");
        }
    }
    if (view_paths.empty()) throw DataError(manifest_path.string() + ": no 'view' entries");
    if (k < 1) throw DataError(manifest_path.string() + ": missing or invalid 'k'");

    MultiViewDataset ds;
    ds.k = k;
    for (const auto& p : view_paths) ds.views.push_back(load_matrix_csv(p));
    const Eigen::Index n = ds.views.front().cols();
    for (std::size_t i = 1; i < ds.views.size(); ++i) {
        if (ds.views[i].cols() != n) {
            throw DataError("sample count mismatch: " + view_paths[0].string() + " has " +
                            std::to_string(n) + " columns but " + view_paths[i].string() +
                            " has " + std::to_string(ds.views[i].cols()));
        }
    }
    if (!labels_path.empty()) {
        ds.labels = load_labels(labels_path);
        if (static_cast<Eigen::Index>(ds.labels.size()) != n) {
            throw DataError(labels_path.string() + ": " + std::to_string(ds.labels.size()) +
                            " labels for " + std::to_string(n) + " samples");
        }
        for (int l : ds.labels) {
            if (l > k) {
                throw DataError(labels_path.string() + ": label " + std::to_string(l) +
                                " exceeds k=" + std::to_string(k));
            }
        }
    }
    return ds;
}

void write_dataset(const MultiViewDataset& ds, const fs::path& dir, const std::string& stem) {
    fs::create_directories(dir);
    std::ofstream manifest(dir / "dataset.manifest");
    if (!manifest) throw DataError("cannot write " + (dir / "dataset.manifest").string());
    for (std::size_t i = 0; i < ds.views.size(); ++i) {
        const std::string name = stem + std::to_string(i + 1) + ".csv";
        write_matrix_csv(ds.views[i], dir / name);
        manifest << "view = " << name << '\n';
    }
    if (ds.has_labels()) {
        write_labels(ds.labels, dir / "labels.csv");
        manifest << "labels = labels.csv\n";
    }
    manifest << "k = " << ds.k << '\n';
}

}  // namespace clrsc
