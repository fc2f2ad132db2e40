#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

#include "tss/block_layout.hpp"
#include "tss/tss_matrix.hpp"
#include "tss/tree.hpp"

namespace tss {

// CSV: one matrix row per line, comma separated, no header. Values are
// written with enough digits to round-trip exactly.
std::string format_csv_matrix(const Eigen::MatrixXd& m);
Eigen::MatrixXd parse_csv_matrix(const std::string& text);
void save_csv_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd load_csv_matrix(const std::filesystem::path& path);

// Vectors are a single CSV column (or a single row).
void save_csv_vector(const std::filesystem::path& path, const Eigen::VectorXd& v);
Eigen::VectorXd load_csv_vector(const std::filesystem::path& path);

// Tree JSON:
//   {"nodes": [{"id": 1, "m": 2, "n": 2}, ...],
//    "edges": [[1, 3], ...],
//    "root": 3}
// Node ids must cover 1..K exactly once.
struct TreeDescription {
  RootedTree tree;
  BlockLayout layout;
};
std::string format_tree_json(const RootedTree& tree, const BlockLayout& layout);
TreeDescription parse_tree_json(const std::string& text);
void save_tree_json(const std::filesystem::path& path, const RootedTree& tree,
                    const BlockLayout& layout);
TreeDescription load_tree_json(const std::filesystem::path& path);

// TSS JSON: {"tree": ..., "layout": ..., "profile": [{"from", "to", "rho"},
// ...], "spinners": [{"node", "D", "Inp", "Out", "Trans"}, ...]} with dense
// matrices stored row major. Loading validates all generator shapes.
std::string format_tss_json(const TssMatrix& t);
TssMatrix parse_tss_json(const std::string& text);
void save_tss_json(const std::filesystem::path& path, const TssMatrix& t);
TssMatrix load_tss_json(const std::filesystem::path& path);

}  // namespace tss
