#pragma once

#include "clrsc/datagen.hpp"
#include "clrsc/numerics.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace clrsc {

/// Headerless rectangular numeric CSV. Parse errors carry line/column.
Matrix load_matrix_csv(const std::filesystem::path& path);

/// Writes with 17 significant digits so load(write(m)) round-trips.
void write_matrix_csv(const Matrix& m, const std::filesystem::path& path);

std::vector<int> load_labels(const std::filesystem::path& path);
void write_labels(const std::vector<int>& labels, const std::filesystem::path& path);

/// Line-oriented `key = value` manifest: `view` (repeatable, ordered),
/// `labels` (optional), `k` (required). Paths resolve relative to the
/// manifest's directory.
MultiViewDataset load_dataset(const std::filesystem::path& manifest_path);

/// Writes view/label CSVs plus a manifest into `dir`.
void write_dataset(const MultiViewDataset& ds, const std::filesystem::path& dir,
                   const std::string& stem = "view");

/// Shortest decimal form that round-trips a double ("inf" for infinity).
std::string format_double(double v);

}  // namespace clrsc
