#include "core/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace otgs {

using nlohmann::json;

LabeledDataset::LabeledDataset(int n, int d) : n_(n), d_(d) {
  if (n < 0 || d < 0) throw ValidationError("dataset: negative vertex count or feature dim");
}

void LabeledDataset::append(Sample sample) {
  if (sample.graph.num_vertices() != n_)
    throw ValidationError("dataset: sample has " + std::to_string(sample.graph.num_vertices()) +
                          " vertices, dataset carries " + std::to_string(n_));
  if (sample.features.size() != static_cast<std::size_t>(n_) * d_)
    throw ValidationError("dataset: feature matrix must be n x d");
  if (sample.label != 0 && sample.label != 1)
    throw ValidationError("dataset: labels must be 0 or 1");
  samples_.push_back(std::move(sample));
}

std::vector<int> LabeledDataset::labels() const {
  std::vector<int> out;
  out.reserve(size());
  for (const auto& s : samples_) out.push_back(s.label);
  return out;
}

bool LabeledDataset::both_classes_present() const {
  bool seen[2] = {false, false};
  for (const auto& s : samples_) seen[s.label] = true;
  return seen[0] && seen[1];
}

std::vector<double> LabeledDataset::node_features(int v) const {
  if (v < 0 || v >= n_) throw ValidationError("dataset: node index out of range");
  std::vector<double> out(size() * d_);
  for (std::size_t i = 0; i < size(); ++i)
    for (int j = 0; j < d_; ++j)
      out[i * d_ + j] = samples_[i].features[static_cast<std::size_t>(v) * d_ + j];
  return out;
}

std::vector<int> LabeledDataset::edge_indicators(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v)
    throw ValidationError("dataset: edge indicator endpoints out of range");
  std::vector<int> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = samples_[i].graph.has_edge(u, v) ? 1 : 0;
  return out;
}

LabeledDataset gen_synthetic(const SyntheticSpec& spec) {
  if (spec.n_nodes < 1) throw ValidationError("gen_synthetic: need at least one node");
  if (spec.n_graphs < 2 || spec.n_graphs % 2 != 0)
    throw ValidationError("gen_synthetic: n_graphs must be even and >= 2 for balanced labels");
  auto check_prob = [](double p, const char* name) {
    if (!(p > 0.0 && p < 1.0))
      throw ValidationError(std::string("gen_synthetic: ") + name + " must lie in (0,1)");
  };
  check_prob(spec.edge_prob_class0, "edge_prob_class0");
  check_prob(spec.edge_prob_class1, "edge_prob_class1");
  if (!(spec.class0_scale > 0.0 && spec.class1_scale > 0.0))
    throw ValidationError("gen_synthetic: feature scales must be positive");

  const int n = spec.n_nodes;
  std::vector<Sample> staged(spec.n_graphs);
  parallel_for(static_cast<std::size_t>(spec.n_graphs), [&](std::size_t i) {
    int label = static_cast<int>(i % 2);
    auto rng = seeded_stream(spec.seed, i);
    double scale = label == 0 ? spec.class0_scale : spec.class1_scale;
    double edge_prob = label == 0 ? spec.edge_prob_class0 : spec.edge_prob_class1;

    std::vector<double> features(n);
    for (int j = 0; j < n; ++j) {
      double mu = (static_cast<double>(j + 1) / n) * scale;
      features[j] = std::normal_distribution<double>(mu, mu)(rng);
    }
    std::vector<std::pair<int, int>> edges;
    std::bernoulli_distribution coin(edge_prob);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng)) edges.emplace_back(u, v);
    staged[i] = Sample{Graph(n, std::move(edges)), std::move(features), label};
  });

  LabeledDataset data(n, 1);
  for (auto& s : staged) data.append(std::move(s));
  return data;
}

std::pair<Graph, std::vector<double>> grid_graph_from_image(const std::vector<double>& pixels,
                                                            int rows, int cols) {
  if (rows < 1 || cols < 1) throw ValidationError("grid graph: empty image");
  if (pixels.size() != static_cast<std::size_t>(rows) * cols)
    throw ValidationError("grid graph: pixel buffer does not match rows*cols");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(2) * rows * cols);
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return {Graph(rows * cols, std::move(edges)), pixels};
}

namespace {

void append_double(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  out += buf;
}

[[noreturn]] void line_error(std::size_t line, const std::string& what) {
  throw IoError("dataset line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_dataset(const LabeledDataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "{\"format\":\"otgs-v1\",\"n\":" << data.num_vertices()
      << ",\"d\":" << data.feature_dim() << "}\n";
  std::string line;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Sample& s = data[i];
    line.clear();
    line += "{\"n\":" + std::to_string(data.num_vertices());
    line += ",\"label\":" + std::to_string(s.label);
    line += ",\"edges\":[";
    bool first = true;
    for (auto [u, v] : s.graph.edges()) {
      if (!first) line += ',';
      first = false;
      line += '[' + std::to_string(u) + ',' + std::to_string(v) + ']';
    }
    line += "],\"features\":[";
    for (int v = 0; v < data.num_vertices(); ++v) {
      if (v > 0) line += ',';
      line += '[';
      for (int j = 0; j < data.feature_dim(); ++j) {
        if (j > 0) line += ',';
        append_double(line, s.features[static_cast<std::size_t>(v) * data.feature_dim() + j]);
      }
      line += ']';
    }
    line += "]}";
    out << line << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

LabeledDataset read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);

  LabeledDataset data;
  bool initialized = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      line_error(line_no, std::string("malformed record: ") + e.what());
    }
    if (!rec.is_object()) line_error(line_no, "record is not a JSON object");

    if (rec.contains("format")) {
      if (rec["format"] != "otgs-v1") line_error(line_no, "unsupported format tag");
      if (initialized) line_error(line_no, "header after data records");
      data = LabeledDataset(rec.value("n", 0), rec.value("d", 0));
      initialized = true;
      continue;
    }

    if (!rec.contains("n") || !rec.contains("label") || !rec.contains("edges") ||
        !rec.contains("features"))
      line_error(line_no, "record missing n/label/edges/features");
    int n = rec["n"].get<int>();
    const auto& feats = rec["features"];
    if (!feats.is_array() || static_cast<int>(feats.size()) != n)
      line_error(line_no, "features must hold one row per vertex");
    int d = n > 0 ? static_cast<int>(feats.at(0).size()) : 0;

    if (!initialized) {
      data = LabeledDataset(n, d);
      initialized = true;
    }
    if (n != data.num_vertices())
      line_error(line_no, "inconsistent vertex count across records");
    if (n > 0 && d != data.feature_dim())
      line_error(line_no, "inconsistent feature width across records");

    Sample s;
    s.label = rec["label"].get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : rec["edges"]) {
      if (!e.is_array() || e.size() != 2) line_error(line_no, "edge entries must be [u,v]");
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
    s.features.resize(static_cast<std::size_t>(n) * data.feature_dim());
    for (int v = 0; v < n; ++v) {
      const auto& row = feats.at(v);
      if (static_cast<int>(row.size()) != data.feature_dim())
        line_error(line_no, "ragged feature row");
      for (int j = 0; j < data.feature_dim(); ++j)
        s.features[static_cast<std::size_t>(v) * data.feature_dim() + j] = row.at(j).get<double>();
    }
    try {
      s.graph = Graph(n, std::move(edges));
      data.append(std::move(s));
    } catch (const ValidationError& e) {
      line_error(line_no, e.what());
    }
  }
  if (!initialized) data = LabeledDataset(0, 0);
  return data;
}

}  // namespace otgs
