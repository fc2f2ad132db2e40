#include "tss/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace tss {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out.good()) throw Error("failed writing " + path.string());
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  if (rows < 0 || cols < 0) throw ParseError("negative matrix dimension");
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw ParseError("matrix data length does not match dimensions");
  Eigen::MatrixXd m(rows, cols);
  Eigen::Index idx = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[idx++].get<double>();
  return m;
}

}  // namespace

std::string format_csv_matrix(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ',';
      out += format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

Eigen::MatrixXd parse_csv_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == EOF) break;
    std::vector<double> row;
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = line.find(',', pos);
      std::string tok = line.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const char* begin = tok.c_str();
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      while (end && *end == ' ') ++end;
      if (end == begin || (end && *end != '\0'))
        throw ParseError("bad CSV value: '" + tok + "'");
      row.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("ragged CSV: row " + std::to_string(rows.size() + 1) +
                       " has " + std::to_string(row.size()) + " values");
    rows.push_back(std::move(row));
  }
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r == 0 ? 0 : static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
  return m;
}

void save_csv_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  write_file(path, format_csv_matrix(m));
}

Eigen::MatrixXd load_csv_matrix(const std::filesystem::path& path) {
  return parse_csv_matrix(read_file(path));
}

void save_csv_vector(const std::filesystem::path& path, const Eigen::VectorXd& v) {
  save_csv_matrix(path, v);
}

Eigen::VectorXd load_csv_vector(const std::filesystem::path& path) {
  Eigen::MatrixXd m = load_csv_matrix(path);
  if (m.rows() == 0 || m.cols() == 0) return Eigen::VectorXd(0);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw ParseError(path.string() + " is not a vector: " +
                   std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

std::string format_tree_json(const RootedTree& tree, const BlockLayout& layout) {
  json nodes = json::array();
  for (NodeId k = 1; k <= tree.node_count(); ++k)
    nodes.push_back({{"id", k},
                     {"m", layout.block_rows(k)},
                     {"n", layout.block_cols(k)}});
  json edges = json::array();
  for (auto [child, parent] : tree.undirected_edges())
    edges.push_back({child, parent});
  json j{{"nodes", std::move(nodes)},
         {"edges", std::move(edges)},
         {"root", tree.root()}};
  return j.dump(2) + "\n";
}

TreeDescription parse_tree_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad tree JSON: ") + e.what());
  }
  try {
    const auto& nodes = j.at("nodes");
    const int node_count = static_cast<int>(nodes.size());
    std::vector<int> rows(node_count, -1), cols(node_count, -1);
    for (const auto& n : nodes) {
      const int id = n.at("id").get<int>();
      if (id < 1 || id > node_count || rows[id - 1] >= 0)
        throw ParseError("node ids must cover 1..K exactly once");
      rows[id - 1] = n.at("m").get<int>();
      cols[id - 1] = n.at("n").get<int>();
      if (rows[id - 1] < 0 || cols[id - 1] < 0)
        throw ParseError("negative block size at node " + std::to_string(id));
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw ParseError("each edge must be a pair of node ids");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    const NodeId root = j.at("root").get<int>();
    return {RootedTree(node_count, edges, root), BlockLayout(rows, cols)};
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad tree JSON: ") + e.what());
  }
}

void save_tree_json(const std::filesystem::path& path, const RootedTree& tree,
                    const BlockLayout& layout) {
  write_file(path, format_tree_json(tree, layout));
}

TreeDescription load_tree_json(const std::filesystem::path& path) {
  return parse_tree_json(read_file(path));
}

std::string format_tss_json(const TssMatrix& t) {
  const RootedTree& tree = t.tree();
  const BlockLayout& layout = t.layout();

  json edges = json::array();
  for (auto [child, parent] : tree.undirected_edges())
    edges.push_back({child, parent});
  json jtree{{"node_count", tree.node_count()},
             {"edges", std::move(edges)},
             {"root", tree.root()}};

  json rows = json::array(), cols = json::array();
  for (NodeId k = 1; k <= tree.node_count(); ++k) {
    rows.push_back(layout.block_rows(k));
    cols.push_back(layout.block_cols(k));
  }

  json profile = json::array();
  for (const auto& [e, rho] : t.profile().entries())
    profile.push_back({{"from", e.from}, {"to", e.to}, {"rho", rho}});

  json spinners = json::array();
  for (NodeId k = 1; k <= tree.node_count(); ++k) {
    const SpinnerTable& s = t.spinner(k);
    json inp = json::array(), out = json::array(), trans = json::array();
    for (const auto& [j, g] : s.inp)
      inp.push_back({{"toward", j}, {"value", matrix_to_json(g)}});
    for (const auto& [i, g] : s.out)
      out.push_back({{"from", i}, {"value", matrix_to_json(g)}});
    for (const auto& [ij, g] : s.trans)
      trans.push_back({{"toward", ij.first},
                       {"from", ij.second},
                       {"value", matrix_to_json(g)}});
    spinners.push_back({{"node", k},
                        {"D", matrix_to_json(s.diag)},
                        {"Inp", std::move(inp)},
                        {"Out", std::move(out)},
                        {"Trans", std::move(trans)}});
  }

  json j{{"tree", std::move(jtree)},
         {"layout", json{{"row_sizes", std::move(rows)},
                         {"col_sizes", std::move(cols)}}},
         {"profile", std::move(profile)},
         {"spinners", std::move(spinners)}};
  return j.dump() + "\n";
}

TssMatrix parse_tss_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad TSS JSON: ") + e.what());
  }
  try {
    const auto& jtree = j.at("tree");
    const int node_count = jtree.at("node_count").get<int>();
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : jtree.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw ParseError("each edge must be a pair of node ids");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    RootedTree tree(node_count, edges, jtree.at("root").get<int>());

    const auto& jlayout = j.at("layout");
    std::vector<int> rows = jlayout.at("row_sizes").get<std::vector<int>>();
    std::vector<int> cols = jlayout.at("col_sizes").get<std::vector<int>>();
    if (static_cast<int>(rows.size()) != node_count ||
        static_cast<int>(cols.size()) != node_count)
      throw ParseError("layout size lists must have one entry per node");
    BlockLayout layout(rows, cols);

    RankProfile profile(tree, 0);
    for (const auto& p : j.at("profile"))
      profile.set(p.at("from").get<int>(), p.at("to").get<int>(),
                  p.at("rho").get<int>());

    std::vector<SpinnerTable> spinners(node_count);
    for (const auto& sp : j.at("spinners")) {
      const int k = sp.at("node").get<int>();
      if (k < 1 || k > node_count) throw BadNodeId(k, node_count);
      SpinnerTable& s = spinners[k - 1];
      s.diag = matrix_from_json(sp.at("D"));
      for (const auto& e : sp.at("Inp"))
        s.inp[e.at("toward").get<int>()] = matrix_from_json(e.at("value"));
      for (const auto& e : sp.at("Out"))
        s.out[e.at("from").get<int>()] = matrix_from_json(e.at("value"));
      for (const auto& e : sp.at("Trans"))
        s.trans[{e.at("toward").get<int>(), e.at("from").get<int>()}] =
            matrix_from_json(e.at("value"));
    }
    return TssMatrix(std::move(tree), std::move(layout), std::move(profile),
                     std::move(spinners));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad TSS JSON: ") + e.what());
  }
}

void save_tss_json(const std::filesystem::path& path, const TssMatrix& t) {
  write_file(path, format_tss_json(t));
}

TssMatrix load_tss_json(const std::filesystem::path& path) {
  return parse_tss_json(read_file(path));
}

}  // namespace tss
