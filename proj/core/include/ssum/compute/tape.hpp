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

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ssum/compute/tensor.hpp"

namespace ssum::compute {

class Tape;

/// A named trainable tensor. Owned by a model's parameter set; a tape only
/// reads it when the parameter enters a computation.
struct Parameter {
  std::string name;
  Tensor value;
};

/// Handle to a node recorded on a tape.
class Var {
 public:
  Var() = default;

  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }
  std::size_t id() const noexcept { return id_; }
  Tape* tape() const noexcept { return tape_; }
  bool valid() const noexcept { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

/// Result of a backward pass: one gradient per tracked node.
class Gradients {
 public:
  /// Gradient with respect to a node; zeros when the node did not influence
  /// the loss.
  Tensor of(Var v) const;

  /// Gradient with respect to a parameter; zeros when the parameter never
  /// entered the tape or was not on the loss's path.
  Tensor of(const Parameter& p) const;

  /// Pointer to the accumulated gradient, or nullptr if there is none.
  const Tensor* find(const Parameter& p) const;

 private:
  friend class Tape;
  std::vector<Tensor> grads_;
  std::vector<Shape> shapes_;
  std::unordered_map<const Parameter*, std::size_t> parameter_nodes_;
};

/// Reverse-mode differentiation tape.
///
/// Nodes are appended in evaluation order, so the node list is always
/// topologically sorted. backward() walks it once in reverse. A tape built
/// with record_gradients=false only evaluates values; nothing it produces
/// can be differentiated.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, const Tensor& grad_out)>;

  explicit Tape(bool record_gradients = true) : recording_(record_gradients) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Untracked input.
  Var constant(Tensor value);
  /// Tracked leaf not tied to a parameter (used by gradient checks).
  Var variable(Tensor value);
  /// Tracked leaf bound to a parameter; repeated calls return the same node.
  Var parameter(const Parameter& p);

  /// Appends an operation result. Throws NonFiniteError if `value` holds
  /// NaN/Inf. `fn` is dropped when no input requires a gradient.
  Var record(std::string_view op, Tensor value, std::initializer_list<Var> inputs,
             BackwardFn fn);
  Var record(std::string_view op, Tensor value, const std::vector<Var>& inputs,
             BackwardFn fn);

  const Tensor& value(std::size_t id) const { return nodes_[id].value; }
  bool requires_grad(std::size_t id) const { return nodes_[id].requires_grad; }
  bool recording() const noexcept { return recording_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Gradient accumulator of node `id` during backward(), or nullptr when
  /// the node does not require a gradient.
  double* grad(std::size_t id);

  /// Differentiates a single-element `loss` with respect to every tracked
  /// node. May be called repeatedly; each call starts from zero.
  Gradients backward(Var loss);

 private:
  struct Node {
    Tensor value;
    std::vector<std::size_t> inputs;
    BackwardFn backward;
    bool requires_grad = false;
  };

  Var push(Node node);
  void check_owner(Var v) const;

  bool recording_;
  std::vector<Node> nodes_;
  std::vector<Tensor> grads_;
  std::unordered_map<const Parameter*, std::size_t> parameter_nodes_;
};

}  // namespace ssum::compute
