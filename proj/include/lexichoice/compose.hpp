#pragma once

#include <memory>
#include <vector>

#include "lexichoice/choice.hpp"
#include "lexichoice/exclusion.hpp"

namespace lexichoice {

/// L_E(C1, C2)(Y) = C1(Y) u C2(Y \ E(C1(Y))). Subtracting TOP leaves the
/// second chooser with nothing. The result is materialized as a table choice
/// function, so contraction holds by construction.
ChoiceFunction lex_compose(const ChoiceFunction& c1, const ChoiceFunction& c2,
                           const ExclusionFunction& e);

/// Left composition: C1 composed with (C2 composed with (...)), i.e. the
/// right-nested tree. exclusions[i] labels the node above choices[i].
ChoiceFunction fold_left(const std::vector<ChoiceFunction>& choices,
                         const std::vector<ExclusionFunction>& exclusions);

/// Right composition: ((C1 composed with C2) composed with C3) ..., i.e. the
/// left-nested tree. exclusions[i] labels the node whose right child is
/// choices[i+1].
ChoiceFunction fold_right(const std::vector<ChoiceFunction>& choices,
                          const std::vector<ExclusionFunction>& exclusions);

/// A binary tree of choice functions with exclusion-labeled internal nodes.
class CompositionTree {
 public:
  static CompositionTree leaf(ChoiceFunction c);
  static CompositionTree node(CompositionTree left, CompositionTree right, ExclusionFunction label);

  bool is_leaf() const { return leaf_.has_value(); }
  const ChoiceFunction& choice() const { return *leaf_; }
  const CompositionTree& left() const { return *left_; }
  const CompositionTree& right() const { return *right_; }
  const ExclusionFunction& label() const { return *label_; }

 private:
  CompositionTree() = default;
  std::optional<ChoiceFunction> leaf_;
  std::shared_ptr<const CompositionTree> left_, right_;
  std::optional<ExclusionFunction> label_;
};

ChoiceFunction eval_tree(const CompositionTree& tree);

/// Reference oracle for the aggregate-quota procedure: each chooser in turn
/// picks freely from the input minus all prior picks, provided the running
/// total of prior picks is below n_quota; otherwise it picks nothing.
ChoiceFunction procedure_aggregate_quota(const std::vector<ChoiceFunction>& choices, int n_quota);

/// Reference oracle for the individual-quota procedure: the gate is that
/// every prior chooser individually picked fewer than n_quota items.
ChoiceFunction procedure_individual_quota(const std::vector<ChoiceFunction>& choices, int n_quota);

/// Right-composition tree whose every label maps Z to Z while |Z| <= k and to
/// TOP beyond, so choosing stops once more than k items are taken.
CompositionTree build_soft_quota_tree(const std::vector<ChoiceFunction>& choices, int k);

/// Right-composition tree realizing nested reserves X_1 >= X_2 >= ... >= X_n:
/// an item whose deepest reserve level is j is only choosable by the first j
/// components. Labels are table exclusions removing the already-chosen items
/// plus everything reserved to earlier positions.
CompositionTree build_nested_reserves(const std::vector<ChoiceFunction>& choices,
                                      const std::vector<ItemSet>& reserves);

}  // namespace lexichoice
