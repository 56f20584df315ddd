// Copyright 2026 The MONFG Opponent Modelling Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "monfg/autodiff.h"

#include <cmath>
#include <optional>

#include "monfg/errors.h"

namespace monfg::ad {
namespace {

double StableSigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double StableSoftplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

Graph& SameGraph(Var a, Var b) {
  if (!a.valid() || !b.valid() || a.graph() != b.graph()) {
    throw InvalidArgument("autodiff: operands belong to different graphs");
  }
  return *a.graph();
}

Graph& GraphOf(Var a) {
  if (!a.valid()) throw InvalidArgument("autodiff: uninitialized Var");
  return *a.graph();
}

}  // namespace

double Var::value() const { return graph_->value(*this); }

Var Graph::Push(Op op, int a, int b, double value) {
  nodes_.push_back(Node{op, a, b, value});
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Var Graph::Constant(double value) { return Push(Op::kConstant, -1, -1, value); }

Var Graph::Parameter(double value) {
  return Push(Op::kParameter, -1, -1, value);
}

std::vector<Var> Graph::Parameters(std::span<const double> values) {
  std::vector<Var> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(Parameter(v));
  return out;
}

std::vector<double> Graph::values(std::span<const Var> vars) const {
  std::vector<double> out;
  out.reserve(vars.size());
  for (Var v : vars) out.push_back(value(v));
  return out;
}

Var Graph::Unary(Op op, Var a) {
  const double x = value(a);
  double y = 0.0;
  switch (op) {
    case Op::kNeg: y = -x; break;
    case Op::kExp: y = std::exp(x); break;
    case Op::kLog: y = std::log(x); break;
    case Op::kSigmoid: y = StableSigmoid(x); break;
    case Op::kSoftplus: y = StableSoftplus(x); break;
    case Op::kStopGradient: y = x; break;
    default: throw InvalidArgument("autodiff: not a unary op");
  }
  return Push(op, a.id(), -1, y);
}

Var Graph::Binary(Op op, Var a, Var b) {
  const double x = value(a);
  const double z = value(b);
  double y = 0.0;
  switch (op) {
    case Op::kAdd: y = x + z; break;
    case Op::kSub: y = x - z; break;
    case Op::kMul: y = x * z; break;
    case Op::kDiv: y = x / z; break;
    default: throw InvalidArgument("autodiff: not a binary op");
  }
  return Push(op, a.id(), b.id(), y);
}

std::vector<Var> Graph::Grad(Var output, std::span<const Var> wrt) {
  if (output.graph() != this) {
    throw InvalidArgument("autodiff: output belongs to another graph");
  }
  const int n = output.id() + 1;

  // Only nodes on a path from some wrt leaf to the output receive adjoints.
  std::vector<char> reaches(n, 0);
  for (Var w : wrt) {
    if (w.graph() != this) {
      throw InvalidArgument("autodiff: wrt variable belongs to another graph");
    }
    if (w.id() < n) reaches[w.id()] = 1;
  }
  for (int i = 0; i < n; ++i) {
    const Node& node = nodes_[i];
    if (reaches[i] || node.op == Op::kStopGradient) continue;
    if ((node.a >= 0 && reaches[node.a]) || (node.b >= 0 && reaches[node.b])) {
      reaches[i] = 1;
    }
  }

  std::vector<std::optional<Var>> adjoint(n);
  auto accumulate = [&](int id, Var g) {
    if (id < 0 || !reaches[id]) return;
    adjoint[id] = adjoint[id] ? *adjoint[id] + g : g;
  };

  if (reaches[output.id()]) adjoint[output.id()] = Constant(1.0);
  for (int i = n - 1; i >= 0; --i) {
    if (!adjoint[i]) continue;
    const Var g = *adjoint[i];
    // Copy: appending nodes below may reallocate nodes_.
    const Node node = nodes_[i];
    const Var self(this, i);
    switch (node.op) {
      case Op::kConstant:
      case Op::kParameter:
      case Op::kStopGradient:
        break;
      case Op::kAdd:
        accumulate(node.a, g);
        accumulate(node.b, g);
        break;
      case Op::kSub:
        accumulate(node.a, g);
        accumulate(node.b, -g);
        break;
      case Op::kMul:
        accumulate(node.a, g * Var(this, node.b));
        accumulate(node.b, g * Var(this, node.a));
        break;
      case Op::kDiv: {
        const Var denom(this, node.b);
        accumulate(node.a, g / denom);
        accumulate(node.b, -(g * self) / denom);
        break;
      }
      case Op::kNeg:
        accumulate(node.a, -g);
        break;
      case Op::kExp:
        accumulate(node.a, g * self);
        break;
      case Op::kLog:
        accumulate(node.a, g / Var(this, node.a));
        break;
      case Op::kSigmoid:
        accumulate(node.a, g * (self * (1.0 - self)));
        break;
      case Op::kSoftplus:
        accumulate(node.a, g * Sigmoid(Var(this, node.a)));
        break;
    }
  }

  std::vector<Var> out;
  out.reserve(wrt.size());
  for (Var w : wrt) {
    if (w.id() < n && adjoint[w.id()]) {
      out.push_back(*adjoint[w.id()]);
    } else {
      out.push_back(Constant(0.0));
    }
  }
  return out;
}

Var operator+(Var a, Var b) {
  return SameGraph(a, b).Binary(Graph::Op::kAdd, a, b);
}
Var operator-(Var a, Var b) {
  return SameGraph(a, b).Binary(Graph::Op::kSub, a, b);
}
Var operator*(Var a, Var b) {
  return SameGraph(a, b).Binary(Graph::Op::kMul, a, b);
}
Var operator/(Var a, Var b) {
  return SameGraph(a, b).Binary(Graph::Op::kDiv, a, b);
}
Var operator-(Var a) { return GraphOf(a).Unary(Graph::Op::kNeg, a); }

Var operator+(Var a, double b) { return a + GraphOf(a).Constant(b); }
Var operator+(double a, Var b) { return GraphOf(b).Constant(a) + b; }
Var operator-(Var a, double b) { return a - GraphOf(a).Constant(b); }
Var operator-(double a, Var b) { return GraphOf(b).Constant(a) - b; }
Var operator*(Var a, double b) { return a * GraphOf(a).Constant(b); }
Var operator*(double a, Var b) { return GraphOf(b).Constant(a) * b; }
Var operator/(Var a, double b) { return a / GraphOf(a).Constant(b); }
Var operator/(double a, Var b) { return GraphOf(b).Constant(a) / b; }

Var Exp(Var a) { return GraphOf(a).Unary(Graph::Op::kExp, a); }
Var Log(Var a) { return GraphOf(a).Unary(Graph::Op::kLog, a); }
Var Sigmoid(Var a) { return GraphOf(a).Unary(Graph::Op::kSigmoid, a); }
Var Softplus(Var a) { return GraphOf(a).Unary(Graph::Op::kSoftplus, a); }
Var StopGradient(Var a) {
  return GraphOf(a).Unary(Graph::Op::kStopGradient, a);
}

Var Sum(Graph& graph, std::span<const Var> terms) {
  if (terms.empty()) return graph.Constant(0.0);
  Var total = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) total = total + terms[i];
  return total;
}

}  // namespace monfg::ad
