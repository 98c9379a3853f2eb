#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/graph.hpp"

namespace otgs {

/// One labeled attributed graph: features are n x d row-major.
struct Sample {
  Graph graph;
  std::vector<double> features;
  int label = 0;
};

/// Sequence of samples on a common vertex set with a common feature width.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(int n, int d);

  void append(Sample sample);
  int num_vertices() const { return n_; }
  int feature_dim() const { return d_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }

  std::vector<int> labels() const;
  bool both_classes_present() const;
  /// Feature block of node v across all samples: size() x d row-major.
  std::vector<double> node_features(int v) const;
  /// Per-sample presence of edge {u,v}.
  std::vector<int> edge_indicators(int u, int v) const;

 private:
  int n_ = 0;
  int d_ = 0;
  std::vector<Sample> samples_;
};

/// Class-conditional benchmark generator: node j's feature is Gaussian with
/// mean = sd = j/n * scale_c (j taken 1-based so no node is degenerate), and
/// every edge appears independently with the class's probability.
struct SyntheticSpec {
  int n_nodes = 100;
  int n_graphs = 1500;
  double class0_scale = 5.0;
  double class1_scale = 4.0;
  double edge_prob_class0 = 0.5;
  double edge_prob_class1 = 0.9;
  std::uint64_t seed = 0;
};

/// Labels are balanced (graph i gets label i mod 2; n_graphs must be even).
/// Bit-reproducible under a fixed seed: every graph draws from its own
/// seed-derived stream, so generation order and threading cannot matter.
LabeledDataset gen_synthetic(const SyntheticSpec& spec);

/// One node per pixel (row-major), feature = intensity, 4-neighborhood edges.
std::pair<Graph, std::vector<double>> grid_graph_from_image(const std::vector<double>& pixels,
                                                            int rows, int cols);

/// Newline-delimited JSON. First record is a header
/// {"format":"otgs-v1","n":...,"d":...}; each sample is
/// {"n":...,"label":0|1,"edges":[[u,v],...],"features":[[...],...]} with
/// edges sorted (u<v) and features printed with 17 significant digits so the
/// round trip is exact and re-serialization is byte-identical.
void write_dataset(const LabeledDataset& data, const std::string& path);
LabeledDataset read_dataset(const std::string& path);

}  // namespace otgs
