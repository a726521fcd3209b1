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

#include "ssum/compute/tape.hpp"

#include <utility>

#include "ssum/common/error.hpp"

namespace ssum::compute {

const Tensor& Var::value() const {
  if (!tape_) throw ArgumentError("value() on an empty Var");
  return tape_->value(id_);
}

Tensor Gradients::of(Var v) const {
  if (v.id() < grads_.size() && !grads_[v.id()].empty()) return grads_[v.id()];
  return Tensor(v.id() < shapes_.size() ? shapes_[v.id()] : v.shape());
}

Tensor Gradients::of(const Parameter& p) const {
  if (const Tensor* g = find(p)) return *g;
  return Tensor(p.value.shape());
}

const Tensor* Gradients::find(const Parameter& p) const {
  auto it = parameter_nodes_.find(&p);
  if (it == parameter_nodes_.end()) return nullptr;
  const Tensor& g = grads_[it->second];
  return g.empty() ? nullptr : &g;
}

Var Tape::constant(Tensor value) {
  if (!value.all_finite()) throw NonFiniteError("constant holds non-finite values");
  Node node;
  node.value = std::move(value);
  return push(std::move(node));
}

Var Tape::variable(Tensor value) {
  if (!value.all_finite()) throw NonFiniteError("variable holds non-finite values");
  Node node;
  node.value = std::move(value);
  node.requires_grad = recording_;
  return push(std::move(node));
}

Var Tape::parameter(const Parameter& p) {
  auto it = parameter_nodes_.find(&p);
  if (it != parameter_nodes_.end()) return Var(this, it->second);
  if (!p.value.all_finite()) {
    throw NonFiniteError("parameter '" + p.name + "' holds non-finite values");
  }
  Node node;
  node.value = p.value;
  node.requires_grad = recording_;
  Var v = push(std::move(node));
  parameter_nodes_.emplace(&p, v.id());
  return v;
}

Var Tape::record(std::string_view op, Tensor value, std::initializer_list<Var> inputs,
                 BackwardFn fn) {
  return record(op, std::move(value), std::vector<Var>(inputs), std::move(fn));
}

Var Tape::record(std::string_view op, Tensor value, const std::vector<Var>& inputs,
                 BackwardFn fn) {
  if (!value.all_finite()) {
    throw NonFiniteError(std::string(op) + " produced non-finite values");
  }
  Node node;
  node.value = std::move(value);
  bool needs = false;
  for (const Var& in : inputs) {
    check_owner(in);
    needs = needs || nodes_[in.id()].requires_grad;
  }
  if (recording_ && needs) {
    node.requires_grad = true;
    node.backward = std::move(fn);
    node.inputs.reserve(inputs.size());
    for (const Var& in : inputs) node.inputs.push_back(in.id());
  }
  return push(std::move(node));
}

double* Tape::grad(std::size_t id) {
  if (!nodes_[id].requires_grad) return nullptr;
  Tensor& g = grads_[id];
  if (g.size() != nodes_[id].value.size() || g.shape() != nodes_[id].value.shape()) {
    g = Tensor(nodes_[id].value.shape());
  }
  return g.data();
}

Gradients Tape::backward(Var loss) {
  check_owner(loss);
  if (loss.value().size() != 1) {
    throw ShapeError("backward needs a scalar loss, got shape " +
                     shape_string(loss.value().shape()));
  }
  if (!recording_) throw ArgumentError("backward on a tape that does not record gradients");

  grads_.assign(nodes_.size(), Tensor());
  if (nodes_[loss.id()].requires_grad) {
    grads_[loss.id()] = Tensor(loss.value().shape(), 1.0);
  }
  for (std::size_t i = loss.id() + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (!node.backward || grads_[i].size() != node.value.size()) continue;
    node.backward(*this, grads_[i]);
    if (!grads_[i].all_finite()) {
      throw NonFiniteError("backward produced non-finite gradient at node " + std::to_string(i));
    }
  }

  Gradients out;
  out.grads_ = std::move(grads_);
  out.shapes_.reserve(nodes_.size());
  for (const Node& n : nodes_) out.shapes_.push_back(n.value.shape());
  out.parameter_nodes_ = parameter_nodes_;
  grads_.clear();
  return out;
}

Var Tape::push(Node node) {
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

void Tape::check_owner(Var v) const {
  if (v.tape() != this || v.id() >= nodes_.size()) {
    throw ArgumentError("Var does not belong to this tape");
  }
}

}  // namespace ssum::compute
