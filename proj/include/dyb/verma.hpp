#pragma once

#include <map>
#include <vector>

#include "dyb/module.hpp"

namespace dyb {

/// Word F_{j1} ... F_{jk} in the simple lowering generators, applied to x_lambda.
using Word = std::vector<int>;
/// Formal linear combination of words.
using WordVec = std::map<Word, Scalar>;

/// Verma module M_{lambda + offset} truncated at root height <= depth, with lambda the
/// symbolic dynamical variable of the datum's frame. Each weight space M[lambda + offset - beta]
/// has a basis of words, chosen lexicographically first among those independent under the
/// Shapovalov form. The quantum form is contravariant for F_i -> E_i K_i^{-1}.
class VermaSlice {
 public:
  VermaSlice(RootDatum datum, Mode mode, Weight offset, int depth);

  const RootDatum& datum() const { return datum_; }
  Mode mode() const { return mode_; }
  const Weight& offset() const { return offset_; }
  int depth() const { return depth_; }
  /// Weight drops beta (nonnegative root-lattice combinations) of height <= depth.
  const std::vector<Weight>& drops() const { return drops_; }
  bool contains(const Weight& beta) const { return blocks_.count(beta) > 0; }
  const std::vector<Word>& basis(const Weight& beta) const;
  int dim() const;
  /// Symmetric Gram matrix of the Shapovalov form on M[lambda + offset - beta].
  const Matrix& gram(const Weight& beta) const;

  /// Eigenvalue of h_i (classical) or [h_i]_q (quantum) on M[lambda + offset - beta].
  Scalar bracket(int i, const Weight& beta) const;
  /// E_i applied to a word.
  WordVec raise(int i, const Word& w) const;
  WordVec raise(int i, const WordVec& v) const;
  /// <u x_lambda, v> for a word u and a combination v of the same content.
  Scalar pair(const Word& u, const WordVec& v) const;
  /// Coordinates of a combination of words of drop beta in the chosen basis.
  std::vector<Scalar> coords(const Weight& beta, const WordVec& v) const;

  /// Matrix of E_i from M[beta] to M[beta - alpha_i] (empty rows when beta - alpha_i is not a drop).
  Matrix e_block(int i, const Weight& beta) const;
  /// Matrix of F_i from M[beta] to M[beta + alpha_i]; requires beta + alpha_i within depth.
  Matrix f_block(int i, const Weight& beta) const;

 private:
  struct Block {
    std::vector<Word> words;
    Matrix gram, gram_inv;
  };
  RootDatum datum_;
  Mode mode_;
  Weight offset_;
  int depth_;
  std::vector<Weight> drops_;
  std::map<Weight, Block> blocks_;

  Weight content(const Word& w) const;
};

/// Number of ways to write beta as a sum of positive roots.
long kostant_partition(const RootDatum& d, const Weight& beta);

/// Intertwiner Phi^v_{lambda + offset}: M_{lambda + offset} -> M_{lambda + offset - wt v} (x) V,
/// recorded by Phi(x) = sum_{v'} u_{v'} (x) v' with u_{v'} in the slice at drop wt v' - wt v.
struct Intertwiner {
  int v = 0;
  VermaSlice slice;
  /// components[v'] holds slice coordinates of u_{v'}; empty when wt v' - wt v is not a drop.
  std::vector<std::vector<Scalar>> components;
  /// wt v' - wt v for each v'.
  std::vector<Weight> drops;
};

Intertwiner solve_intertwiner(const WeightModule& V, int v, const Weight& offset);

/// Expectation value of (Phi^w_{lambda - wt v} (x) 1) Phi^v_lambda as a vector of W (x) V.
std::vector<Scalar> expectation_value(const Intertwiner& phi_v, const WeightModule& W, int w);

}  // namespace dyb
