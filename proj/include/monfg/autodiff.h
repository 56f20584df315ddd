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

#ifndef MONFG_AUTODIFF_H_
#define MONFG_AUTODIFF_H_

// A small define-by-run expression graph with symbolic reverse mode.
//
// Values are computed eagerly when a node is created. Grad() does not just
// return numbers: it appends the adjoint computation to the same graph and
// hands back Vars, so a gradient can itself be differentiated. This is what
// higher-order DiCE estimates and LOLA-style lookahead need.
//
// A Graph is append-only and meant to live for a single update step.

#include <cstdint>
#include <span>
#include <vector>

namespace monfg::ad {

class Graph;

// Handle to a node. Cheap to copy; only valid while its Graph is alive.
class Var {
 public:
  Var() = default;

  double value() const;
  int id() const { return id_; }
  Graph* graph() const { return graph_; }
  bool valid() const { return graph_ != nullptr; }

 private:
  friend class Graph;
  Var(Graph* graph, int id) : graph_(graph), id_(id) {}

  Graph* graph_ = nullptr;
  int id_ = -1;
};

class Graph {
 public:
  enum class Op : std::uint8_t {
    kConstant,
    kParameter,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kNeg,
    kExp,
    kLog,
    kSigmoid,
    kSoftplus,
    kStopGradient,
  };

  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Var Constant(double value);
  Var Parameter(double value);
  std::vector<Var> Parameters(std::span<const double> values);

  double value(Var v) const { return nodes_[v.id()].value; }
  std::vector<double> values(std::span<const Var> vars) const;
  std::size_t size() const { return nodes_.size(); }

  // Reverse-mode derivative of `output` with respect to each of `wrt`. The
  // returned Vars live in this graph; inputs `output` does not depend on get
  // a constant zero.
  std::vector<Var> Grad(Var output, std::span<const Var> wrt);

  Var Unary(Op op, Var a);
  Var Binary(Op op, Var a, Var b);

 private:
  struct Node {
    Op op;
    int a = -1;
    int b = -1;
    double value = 0.0;
  };

  Var Push(Op op, int a, int b, double value);

  std::vector<Node> nodes_;
};

Var operator+(Var a, Var b);
Var operator-(Var a, Var b);
Var operator*(Var a, Var b);
Var operator/(Var a, Var b);
Var operator-(Var a);
Var operator+(Var a, double b);
Var operator+(double a, Var b);
Var operator-(Var a, double b);
Var operator-(double a, Var b);
Var operator*(Var a, double b);
Var operator*(double a, Var b);
Var operator/(Var a, double b);
Var operator/(double a, Var b);

Var Exp(Var a);
Var Log(Var a);
Var Sigmoid(Var a);
// log(1 + e^a), evaluated without overflow.
Var Softplus(Var a);
// Identity in the forward pass; blocks all derivatives.
Var StopGradient(Var a);
// Empty input yields a constant zero in `graph`.
Var Sum(Graph& graph, std::span<const Var> terms);

}  // namespace monfg::ad

#endif  // MONFG_AUTODIFF_H_
