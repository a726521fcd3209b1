// Copyright 2026 The ssum-transfer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into the code under test except to build inputs.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "ssum/common/random.hpp"
#include "ssum/compute/ops.hpp"
#include "ssum/decoding/search.hpp"

namespace ssum::testing {

using compute::Shape;
using compute::Tape;
using compute::Tensor;
using compute::Var;

inline Tensor random_tensor(const Shape& shape, Rng& rng, double scale = 1.0) {
  Tensor t(shape);
  for (double& v : t.values()) v = scale * rng.uniform(-1.0, 1.0);
  return t;
}

/// Relative error of analytic `a` against numeric `n`. Differences at or
/// below the absolute floor count as zero: a structurally zero gradient (a
/// key bias under softmax, say) has a central difference of pure rounding
/// noise, around eps * loss / step.
inline double gradient_error(double a, double n, double floor) {
  const double diff = std::abs(a - n);
  if (diff <= floor) return 0.0;
  return diff / std::max(std::abs(a), std::abs(n));
}

/// Central finite-difference check of d loss / d input for every input.
struct GradCheck {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
};

using LossFn = std::function<Var(Tape&, const std::vector<Var>&)>;

inline double eval_loss(const LossFn& fn, const std::vector<Tensor>& inputs) {
  Tape tape(false);
  std::vector<Var> vars;
  for (const Tensor& t : inputs) vars.push_back(tape.constant(t));
  return fn(tape, vars).value().item();
}

inline GradCheck gradcheck(const LossFn& fn, std::vector<Tensor> inputs, double step = 1e-5,
                           double floor = 1e-8) {
  Tape tape;
  std::vector<Var> vars;
  for (const Tensor& t : inputs) vars.push_back(tape.variable(t));
  const auto grads = tape.backward(fn(tape, vars));
  GradCheck out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Tensor analytic = grads.of(vars[i]);
    for (std::size_t k = 0; k < inputs[i].size(); ++k) {
      const double saved = inputs[i][k];
      inputs[i][k] = saved + step;
      const double up = eval_loss(fn, inputs);
      inputs[i][k] = saved - step;
      const double down = eval_loss(fn, inputs);
      inputs[i][k] = saved;
      const double numeric = (up - down) / (2.0 * step);
      out.max_relative_error = std::max(out.max_relative_error, gradient_error(analytic[k], numeric, floor));
      ++out.checked;
    }
  }
  return out;
}

/// Weighted sum with fixed random weights: a scalar whose gradient reaches
/// every output element with a different coefficient.
inline Var probe(Var out, std::uint64_t seed) {
  Rng rng(seed);
  Tape& tape = *out.tape();
  return compute::sum(compute::mul(out, tape.constant(random_tensor(out.shape(), rng))));
}

inline Tensor naive_matmul(const Tensor& a, const Tensor& b) {
  const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  Tensor c({m, n});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < k; ++t) s += a.at(i, t) * b.at(t, j);
      c.at(i, j) = s;
    }
  return c;
}

/// Sliding-window 2-D convolution, x: Cin x H x W, w: Cout x Cin x K x K.
inline Tensor naive_conv2d(const Tensor& x, const Tensor& w, const Tensor& b, std::size_t stride,
                           std::size_t pad) {
  const std::size_t cin = x.dim(0), h = x.dim(1), wd = x.dim(2), cout = w.dim(0), k = w.dim(2);
  const std::size_t oh = (h + 2 * pad - k) / stride + 1, ow = (wd + 2 * pad - k) / stride + 1;
  Tensor y({cout, oh, ow});
  for (std::size_t o = 0; o < cout; ++o)
    for (std::size_t i = 0; i < oh; ++i)
      for (std::size_t j = 0; j < ow; ++j) {
        double s = b[o];
        for (std::size_t c = 0; c < cin; ++c)
          for (std::size_t di = 0; di < k; ++di)
            for (std::size_t dj = 0; dj < k; ++dj) {
              const long r = static_cast<long>(i * stride + di) - static_cast<long>(pad);
              const long q = static_cast<long>(j * stride + dj) - static_cast<long>(pad);
              if (r < 0 || q < 0 || r >= static_cast<long>(h) || q >= static_cast<long>(wd)) continue;
              s += x[(c * h + static_cast<std::size_t>(r)) * wd + static_cast<std::size_t>(q)] *
                   w[((o * cin + c) * k + di) * k + dj];
            }
        y[(o * oh + i) * ow + j] = s;
      }
  return y;
}

/// Sliding-window 1-D convolution, x: T x Cin, w: Cout x Cin x K.
inline Tensor naive_conv1d(const Tensor& x, const Tensor& w, const Tensor& b, std::size_t stride,
                           std::size_t pad) {
  const std::size_t t = x.dim(0), cin = x.dim(1), cout = w.dim(0), k = w.dim(2);
  const std::size_t ot = (t + 2 * pad - k) / stride + 1;
  Tensor y({ot, cout});
  for (std::size_t i = 0; i < ot; ++i)
    for (std::size_t o = 0; o < cout; ++o) {
      double s = b[o];
      for (std::size_t d = 0; d < k; ++d) {
        const long r = static_cast<long>(i * stride + d) - static_cast<long>(pad);
        if (r < 0 || r >= static_cast<long>(t)) continue;
        for (std::size_t c = 0; c < cin; ++c) s += x.at(static_cast<std::size_t>(r), c) * w[(o * cin + c) * k + d];
      }
      y.at(i, o) = s;
    }
  return y;
}

/// Quadratic LCS table.
template <typename T>
std::size_t dp_lcs(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = a[i - 1] == b[j - 1] ? d[i - 1][j - 1] + 1 : std::max(d[i - 1][j], d[i][j - 1]);
  return d[a.size()][b.size()];
}

/// Full Levenshtein table.
template <typename T>
std::size_t dp_edit(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

/// Enumerates every partial injective matching of equal tokens and keeps
/// the one with most matches, then fewest chunks. Returns {matches, chunks}.
inline std::pair<std::size_t, std::size_t> exhaustive_alignment(const std::vector<std::string>& h,
                                                                const std::vector<std::string>& r) {
  std::pair<std::size_t, std::size_t> best{0, 0};
  std::vector<long> map(h.size(), -1);
  std::vector<bool> used(r.size(), false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == h.size()) {
      std::size_t m = 0, chunks = 0;
      for (std::size_t a = 0; a < h.size(); ++a) {
        if (map[a] < 0) continue;
        ++m;
        if (!(a > 0 && map[a - 1] >= 0 && map[a] == map[a - 1] + 1)) ++chunks;
      }
      if (m > best.first || (m == best.first && m > 0 && chunks < best.second)) best = {m, chunks};
      return;
    }
    rec(i + 1);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (used[j] || r[j] != h[i]) continue;
      used[j] = true;
      map[i] = static_cast<long>(j);
      rec(i + 1);
      map[i] = -1;
      used[j] = false;
    }
  };
  rec(0);
  return best;
}

/// A scorer with hand-set, prefix-dependent log-probabilities over a tiny
/// vocabulary: the four reserved ids plus `content` ordinary tokens. The
/// reserved non-eos ids get zero probability.
class RiggedScorer final : public decoding::TokenScorer {
 public:
  RiggedScorer(std::size_t content, std::uint64_t seed) : content_(content), seed_(seed) {}
  std::size_t vocab_size() const override { return 4 + content_; }
  std::vector<double> log_probs(std::span<const int> prefix) const override {
    std::uint64_t h = seed_;
    for (int t : prefix) h = mix64(h ^ static_cast<std::uint64_t>(t + 1));
    Rng rng(h);
    std::vector<int> allowed{2};
    for (std::size_t c = 0; c < content_; ++c) allowed.push_back(4 + static_cast<int>(c));
    std::vector<double> logits(allowed.size());
    double m = -std::numeric_limits<double>::infinity();
    for (double& l : logits) {
      l = 3.0 * rng.normal();
      m = std::max(m, l);
    }
    double z = 0.0;
    for (double l : logits) z += std::exp(l - m);
    std::vector<double> out(vocab_size(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < allowed.size(); ++i) out[static_cast<std::size_t>(allowed[i])] = logits[i] - m - std::log(z);
    return out;
  }

 private:
  std::size_t content_;
  std::uint64_t seed_;
};

struct Enumerated {
  std::vector<int> tokens;  // with <sos>, ending in <eos> when finished
  double score;
};

/// Scores every sequence of at most `max_length` emitted tokens: finished
/// ones (ending in <eos>) and unfinished ones of exactly max_length. Returns
/// the best by score, ties by shorter then lexicographic.
inline Enumerated exhaustive_best(const decoding::TokenScorer& scorer, std::size_t max_length, double alpha) {
  Enumerated best{{}, -std::numeric_limits<double>::infinity()};
  auto consider = [&](const std::vector<int>& tokens, double lp) {
    const double score = lp + alpha * static_cast<double>(tokens.size() - 1);
    const bool better = score > best.score ||
                        (score == best.score && (tokens.size() < best.tokens.size() ||
                                                 (tokens.size() == best.tokens.size() && tokens < best.tokens)));
    if (better) best = {tokens, score};
  };
  std::function<void(std::vector<int>&, double)> rec = [&](std::vector<int>& prefix, double lp) {
    const auto probs = scorer.log_probs(prefix);
    for (std::size_t t = 0; t < probs.size(); ++t) {
      if (!decoding::emittable(static_cast<int>(t)) || std::isinf(probs[t])) continue;
      prefix.push_back(static_cast<int>(t));
      const double next = lp + probs[t];
      if (t == 2) {
        consider(prefix, next);
      } else if (prefix.size() - 1 == max_length) {
        consider(prefix, next);
      } else {
        rec(prefix, next);
      }
      prefix.pop_back();
    }
  };
  std::vector<int> start{1};
  rec(start, 0.0);
  return best;
}

}  // namespace ssum::testing
