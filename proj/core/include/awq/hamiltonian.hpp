#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace awq {

// Energy reference for emitted Hamiltonians. RotatingDrive is the
// canonical frame: energies measured from the chain resonance, the
// |g1> manifold rotated at the drive frequency. AppendixShift adds
// (Delta - impurity_detuning) * I so the |g1> manifold sits near zero.
enum class Frame { RotatingDrive, AppendixShift };

struct BasisLabel {
  enum class Kind { ChainSite, ChainMode, ImpurityLevel, DimerState };
  Kind kind = Kind::ChainSite;
  int index = 0;   // site (0-based), mode nu (1-based), or dimer index
  int atom = 0;    // ImpurityLevel: 0 = a, 1 = b
  int level = 0;   // ImpurityLevel: 0 = |e>, 1 = |g1>
  int parity = 0;  // DimerState: +-1

  std::string text() const;
  bool operator==(const BasisLabel&) const = default;
};

struct EffectiveHamiltonian {
  Eigen::MatrixXcd matrix;
  std::vector<BasisLabel> basis;
  Frame frame = Frame::RotatingDrive;

  int dim() const { return static_cast<int>(basis.size()); }
  // Index of the first label matching the predicate; -1 if absent.
  template <typename Pred>
  int find(Pred&& pred) const {
    for (int i = 0; i < dim(); ++i)
      if (pred(basis[i])) return i;
    return -1;
  }
  int index_of(const BasisLabel& l) const;
};

}  // namespace awq
