#pragma once

#include <array>
#include <string>
#include <vector>

#include "imlkit/formula.hpp"
#include "imlkit/semantics.hpp"
#include "imlkit/structures.hpp"

namespace imlkit {

struct EquivalenceSetting {
  std::vector<Formula> sigma;              // canonical order
  std::vector<StateSet> truth;             // truth set of each sigma member
  std::vector<int> class_of;               // state -> class
  std::vector<std::vector<int>> classes;   // numbered by lowest member
  bool agree(int s, int t) const { return class_of[s] == class_of[t]; }
};

// Throws SigmaNotClosed unless sigma is closed.
EquivalenceSetting equiv_classes(const Model& m, const FormulaSet& sigma);

struct Filtration {
  Model model;
  std::vector<int> class_of;
};

Filtration smallest_filtration(const Model& m, const FormulaSet& sigma);
Filtration largest_filtration(const Model& m, const FormulaSet& sigma);

struct FiltrationReport {
  std::array<bool, 8> holds{};
  std::array<std::string, 8> detail;  // first violation per failing condition
  bool ok() const;
};

// Throws WrongCarrier when the class map cannot be read against the two models.
FiltrationReport is_filtration(const Model& candidate, const Model& original,
                               const FormulaSet& sigma, const std::vector<int>& class_of);

bool filtration_lemma_check(const Model& candidate, const Model& original,
                            const FormulaSet& sigma, const std::vector<int>& class_of);

}  // namespace imlkit
