#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "questlab/autodiff.hpp"
#include "questlab/kg.hpp"
#include "questlab/rng.hpp"
#include "questlab/text.hpp"
#include "questlab/vocab.hpp"

namespace questlab::nn {

template <typename T>
struct NetConfig {
  int vocab = Vocab::global().size();
  int embed_dim = 50;      // word embedding width, also the node feature width
  int heads = 2;           // graph attention heads
  int hidden = 64;         // state and action vector width (dot-product Q)
  int sblstm_hidden = 32;  // per direction; the two directions concat to hidden
  int window = 30;         // sliding window length, stride 1
  T leaky_slope = T(0.2);
  int neighborhood_order = 3;

  bool operator==(const NetConfig&) const = default;
};

template <typename T>
struct LstmParams {
  Param<T> wx;  // in x 4H, gate order i,f,g,o
  Param<T> wh;  // H x 4H
  Param<T> b;   // 1 x 4H

  void create(const std::string& prefix, int in, int hidden) {
    wx = Param<T>(prefix + ".wx", in, 4 * hidden);
    wh = Param<T>(prefix + ".wh", hidden, 4 * hidden);
    b = Param<T>(prefix + ".b", 1, 4 * hidden);
  }
};

/// Every learnable array of the agent: shared token embeddings, graph
/// attention, the sliding bidirectional observation encoder, the action
/// encoder, the fusion layer, and the bag-of-words baseline encoder.
template <typename T>
struct ParameterSet {
  NetConfig<T> config;

  Param<T> embedding;              // V x F, shared everywhere tokens appear
  std::vector<Param<T>> gat_w;     // per head: F x F
  std::vector<Param<T>> gat_p;     // per head: 1 x 2F attention vector
  Param<T> gat_out_w;              // (K*F) x hidden
  Param<T> gat_out_b;              // 1 x hidden
  LstmParams<T> obs_fwd, obs_bwd;  // the SB-LSTM cells
  LstmParams<T> action_lstm;       // unidirectional action encoder
  Param<T> fuse_w;                 // 2*hidden x hidden
  Param<T> fuse_b;                 // 1 x hidden
  Param<T> bow_w1, bow_b1, bow_w2, bow_b2;  // baseline feed-forward encoder

  explicit ParameterSet(NetConfig<T> cfg = {}) : config(cfg) {
    embedding = Param<T>("embedding", cfg.vocab, cfg.embed_dim);
    for (int k = 0; k < cfg.heads; ++k) {
      gat_w.push_back(Param<T>("gat." + std::to_string(k) + ".w", cfg.embed_dim, cfg.embed_dim));
      gat_p.push_back(Param<T>("gat." + std::to_string(k) + ".p", 1, 2 * cfg.embed_dim));
    }
    gat_out_w = Param<T>("gat_out.w", cfg.heads * cfg.embed_dim, cfg.hidden);
    gat_out_b = Param<T>("gat_out.b", 1, cfg.hidden);
    obs_fwd.create("obs_fwd", cfg.embed_dim, cfg.sblstm_hidden);
    obs_bwd.create("obs_bwd", cfg.embed_dim, cfg.sblstm_hidden);
    action_lstm.create("action", cfg.embed_dim, cfg.hidden);
    fuse_w = Param<T>("fuse.w", 2 * cfg.hidden, cfg.hidden);
    fuse_b = Param<T>("fuse.b", 1, cfg.hidden);
    bow_w1 = Param<T>("bow.w1", cfg.embed_dim, cfg.hidden);
    bow_b1 = Param<T>("bow.b1", 1, cfg.hidden);
    bow_w2 = Param<T>("bow.w2", cfg.hidden, cfg.hidden);
    bow_b2 = Param<T>("bow.b2", 1, cfg.hidden);
  }

  std::vector<Param<T>*> all() {
    std::vector<Param<T>*> out{&embedding};
    for (auto& p : gat_w) out.push_back(&p);
    for (auto& p : gat_p) out.push_back(&p);
    out.push_back(&gat_out_w);
    out.push_back(&gat_out_b);
    for (LstmParams<T>* l : {&obs_fwd, &obs_bwd, &action_lstm}) {
      out.push_back(&l->wx);
      out.push_back(&l->wh);
      out.push_back(&l->b);
    }
    out.push_back(&fuse_w);
    out.push_back(&fuse_b);
    out.push_back(&bow_w1);
    out.push_back(&bow_b1);
    out.push_back(&bow_w2);
    out.push_back(&bow_b2);
    return out;
  }

  std::vector<const Param<T>*> all() const {
    auto mut = const_cast<ParameterSet<T>*>(this)->all();
    return {mut.begin(), mut.end()};
  }

  void init(Rng& rng, T scale = T(0.08)) {
    for (Param<T>* p : all()) {
      for (int i = 0; i < p->value.rows(); ++i) {
        for (int j = 0; j < p->value.cols(); ++j) {
          p->value(i, j) = static_cast<T>(rng.range(-double(scale), double(scale)));
        }
      }
      p->zero_grad();
    }
  }

  void zero_grads() {
    for (Param<T>* p : all()) p->zero_grad();
  }

  /// One SGD step with global gradient-norm clipping. Throws, naming the
  /// parameter, if a gradient is not finite.
  void sgd_step(T lr, T clip) {
    double norm_sq = 0;
    for (Param<T>* p : all()) {
      double n = static_cast<double>(p->grad.squaredNorm());
      if (!std::isfinite(n)) {
        throw std::runtime_error("non-finite gradient in parameter " + p->name);
      }
      norm_sq += n;
    }
    T factor = T(1);
    double norm = std::sqrt(norm_sq);
    if (clip > T(0) && norm > static_cast<double>(clip)) {
      factor = static_cast<T>(static_cast<double>(clip) / norm);
    }
    for (Param<T>* p : all()) {
      p->value -= (lr * factor) * p->grad;
    }
  }
};

// ---------------------------------------------------------------------------
// building blocks

/// One batched LSTM step. x: B x in, h/c: B x H. Gate order i,f,g,o.
template <typename T>
std::pair<typename Tape<T>::Var, typename Tape<T>::Var> lstm_cell(
    Tape<T>& tape, LstmParams<T>& p, typename Tape<T>::Var x,
    typename Tape<T>::Var h, typename Tape<T>::Var c) {
  using Var = typename Tape<T>::Var;
  const int hidden = static_cast<int>(p.wh.value.rows());
  Var gates = tape.add_rowwise(
      tape.add(tape.matmul(x, tape.leaf(p.wx)), tape.matmul(h, tape.leaf(p.wh))),
      tape.leaf(p.b));
  Var i = tape.sigmoid(tape.slice_cols(gates, 0, hidden));
  Var f = tape.sigmoid(tape.slice_cols(gates, hidden, hidden));
  Var g = tape.tanh_op(tape.slice_cols(gates, 2 * hidden, hidden));
  Var o = tape.sigmoid(tape.slice_cols(gates, 3 * hidden, hidden));
  Var c2 = tape.add(tape.mul(f, c), tape.mul(i, g));
  Var h2 = tape.mul(o, tape.tanh_op(c2));
  return {h2, c2};
}

/// Sliding bidirectional LSTM over one token sequence. All windows of length
/// min(window, len) advance in lockstep as one batch; the per-window final
/// forward and backward states are concatenated and mean-pooled into a single
/// 1 x hidden observation vector.
template <typename T>
typename Tape<T>::Var sblstm_encode(Tape<T>& tape, ParameterSet<T>& params,
                                    std::vector<int> token_ids) {
  using Var = typename Tape<T>::Var;
  if (token_ids.empty()) token_ids.push_back(Vocab::kPad);
  const int len = static_cast<int>(token_ids.size());
  const int win = std::min(params.config.window, len);
  const int num_windows = len - win + 1;
  const int hidden = params.config.sblstm_hidden;

  Var emb = tape.gather_rows(tape.leaf(params.embedding), token_ids);

  auto run = [&](LstmParams<T>& cell_params, bool backward) {
    Var h = tape.constant(Mat<T>::Zero(num_windows, hidden));
    Var c = tape.constant(Mat<T>::Zero(num_windows, hidden));
    for (int t = 0; t < win; ++t) {
      int offset = backward ? win - 1 - t : t;
      std::vector<int> idx(num_windows);
      for (int w = 0; w < num_windows; ++w) idx[w] = w + offset;
      Var x = tape.gather_rows(emb, idx);
      auto [h2, c2] = lstm_cell(tape, cell_params, x, h, c);
      h = h2;
      c = c2;
    }
    return h;  // num_windows x hidden, each row one window's final state
  };

  Var fwd = run(params.obs_fwd, false);
  Var bwd = run(params.obs_bwd, true);
  return tape.mean_rows(tape.concat_cols(fwd, bwd));  // 1 x (2*sblstm_hidden)
}

/// Unidirectional LSTM over a batch of padded token sequences; returns one
/// row per sequence (the final state at that sequence's own length).
template <typename T>
typename Tape<T>::Var lstm_encode_batch(Tape<T>& tape, ParameterSet<T>& params,
                                        const std::vector<std::vector<int>>& seqs) {
  using Var = typename Tape<T>::Var;
  if (seqs.empty()) throw std::invalid_argument("empty action batch");
  const int batch = static_cast<int>(seqs.size());
  const int hidden = params.config.hidden;
  int max_len = 1;
  for (const auto& s : seqs) max_len = std::max(max_len, static_cast<int>(s.size()));

  Var emb = tape.leaf(params.embedding);
  Var h = tape.constant(Mat<T>::Zero(batch, hidden));
  Var c = tape.constant(Mat<T>::Zero(batch, hidden));
  for (int t = 0; t < max_len; ++t) {
    std::vector<int> ids(batch, Vocab::kPad);
    Mat<T> keep = Mat<T>::Zero(batch, hidden);
    for (int b = 0; b < batch; ++b) {
      if (t < static_cast<int>(seqs[b].size())) {
        ids[b] = seqs[b][t];
        keep.row(b).setOnes();
      }
    }
    Var x = tape.gather_rows(emb, ids);
    auto [h2, c2] = lstm_cell(tape, params.action_lstm, x, h, c);
    if (t == 0) {
      h = h2;
      c = c2;
    } else {
      Var keep_v = tape.constant(keep);
      Var drop_v = tape.constant(Mat<T>(Mat<T>::Ones(batch, hidden) - keep));
      h = tape.add(tape.mul(h2, keep_v), tape.mul(h, drop_v));
      c = tape.add(tape.mul(c2, keep_v), tape.mul(c, drop_v));
    }
  }
  return h;  // batch x hidden
}

template <typename T>
typename Tape<T>::Var lstm_encode_action(Tape<T>& tape, ParameterSet<T>& params,
                                         const std::vector<int>& token_ids) {
  if (token_ids.empty()) throw std::invalid_argument("empty action string");
  return lstm_encode_batch(tape, params, {token_ids});
}

/// Node features for graph attention: per node, the mean embedding of its
/// label tokens.
template <typename T>
typename Tape<T>::Var node_features(Tape<T>& tape, ParameterSet<T>& params,
                                    const std::vector<std::string>& labels) {
  using Var = typename Tape<T>::Var;
  Var emb = tape.leaf(params.embedding);
  std::vector<Var> rows;
  rows.reserve(labels.size());
  for (const auto& label : labels) {
    auto ids = Vocab::global().encode(tokenize(label));
    if (ids.empty()) ids.push_back(Vocab::kUnk);
    rows.push_back(tape.mean_rows(tape.gather_rows(emb, ids)));
  }
  return tape.vstack(rows);  // N x F
}

/// Multi-head graph attention over explicit neighborhoods, pooled into a
/// single graph vector:
///   e_ij = LeakyReLU(p . (W h_i (+) W h_j)),  alpha_ij = softmax_j(e_ij)
///   head_i = tanh(sum_j alpha_ij W h_j),      g = ReLU(W_g mean_i(heads) + b_g)
template <typename T>
typename Tape<T>::Var graph_attention(Tape<T>& tape, ParameterSet<T>& params,
                                      typename Tape<T>::Var feats,
                                      const std::vector<std::vector<int>>& neighborhoods) {
  using Var = typename Tape<T>::Var;
  const int f = params.config.embed_dim;
  const int n = static_cast<int>(neighborhoods.size());

  std::vector<Var> head_outputs;
  for (int k = 0; k < params.config.heads; ++k) {
    Var hw = tape.matmul(feats, tape.leaf(params.gat_w[k]));  // N x F
    Var p = tape.leaf(params.gat_p[k]);
    Var u = tape.matmul(hw, tape.transpose(tape.slice_cols(p, 0, f)));  // N x 1
    Var v = tape.matmul(hw, tape.transpose(tape.slice_cols(p, f, f)));  // N x 1
    std::vector<Var> rows;
    rows.reserve(n);
    for (int i = 0; i < n; ++i) {
      const auto& neigh = neighborhoods[i];
      Var logits = tape.leaky_relu(
          tape.add_scalar(tape.transpose(tape.gather_rows(v, neigh)),
                          tape.slice_rows(u, i, 1)),
          params.config.leaky_slope);              // 1 x deg
      Var alpha = tape.softmax_rows(logits);       // 1 x deg
      rows.push_back(tape.matmul(alpha, tape.gather_rows(hw, neigh)));  // 1 x F
    }
    head_outputs.push_back(tape.tanh_op(tape.vstack(rows)));  // N x F
  }
  Var concat = head_outputs[0];
  for (std::size_t k = 1; k < head_outputs.size(); ++k) {
    concat = tape.concat_cols(concat, head_outputs[k]);
  }
  Var pooled = tape.mean_rows(concat);  // 1 x (K*F)
  return tape.relu(tape.add_rowwise(tape.matmul(pooled, tape.leaf(params.gat_out_w)),
                                    tape.leaf(params.gat_out_b)));
}

/// Undirected neighborhoods of every node, in nodes() order.
std::vector<std::vector<int>> graph_neighborhoods(const KnowledgeGraph& g, int order);

/// Graph embedding g_t of a knowledge graph. An empty graph embeds to zero.
template <typename T>
typename Tape<T>::Var graph_vector(Tape<T>& tape, ParameterSet<T>& params,
                                   const KnowledgeGraph& g) {
  if (g.empty()) {
    return tape.constant(Mat<T>::Zero(1, params.config.hidden));
  }
  auto labels = g.nodes();
  auto neighborhoods = graph_neighborhoods(g, params.config.neighborhood_order);
  auto feats = node_features(tape, params, labels);
  return graph_attention(tape, params, feats, neighborhoods);
}

/// s_t = ReLU(W_l (g_t (+) o_t) + b_l)
template <typename T>
typename Tape<T>::Var fuse_state(Tape<T>& tape, ParameterSet<T>& params,
                                 typename Tape<T>::Var g_t, typename Tape<T>::Var o_t) {
  if (tape.value(g_t).cols() + tape.value(o_t).cols() != params.fuse_w.value.rows()) {
    throw std::invalid_argument("fuse_state: dimension mismatch");
  }
  return tape.relu(tape.add_rowwise(
      tape.matmul(tape.concat_cols(g_t, o_t), tape.leaf(params.fuse_w)),
      tape.leaf(params.fuse_b)));
}

/// Bag-of-words baseline state encoder: mean embedding through two ReLU layers.
template <typename T>
typename Tape<T>::Var bow_encode(Tape<T>& tape, ParameterSet<T>& params,
                                 std::vector<int> token_ids) {
  using Var = typename Tape<T>::Var;
  if (token_ids.empty()) token_ids.push_back(Vocab::kPad);
  Var mean = tape.mean_rows(tape.gather_rows(tape.leaf(params.embedding), token_ids));
  Var h1 = tape.relu(tape.add_rowwise(tape.matmul(mean, tape.leaf(params.bow_w1)),
                                      tape.leaf(params.bow_b1)));
  return tape.relu(tape.add_rowwise(tape.matmul(h1, tape.leaf(params.bow_w2)),
                                    tape.leaf(params.bow_b2)));
}

/// Q(s, a) = s . a
template <typename T>
typename Tape<T>::Var q_value(Tape<T>& tape, typename Tape<T>::Var s,
                              typename Tape<T>::Var a) {
  if (tape.value(s).cols() != tape.value(a).cols() || tape.value(s).rows() != 1 ||
      tape.value(a).rows() != 1) {
    throw std::invalid_argument("q_value: dimension mismatch");
  }
  return tape.sum_all(tape.mul(s, a));
}

using Real = float;
using RealParams = ParameterSet<Real>;
using RealTape = Tape<Real>;

}  // namespace questlab::nn
