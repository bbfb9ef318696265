#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadlat/mass.hpp"
#include "quadlat/spinor.hpp"

namespace quadlat {

struct IncompleteGenusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Classes are stored as canonical Gram matrices of the primitive lattices
/// L_f; disc is the form discriminant det(F) with F the second partials.
/// An imprimitive form c*f is kept as L_f with multiplier c.
struct ClassSet {
  int rank = 4;
  i64 disc = 0;
  std::vector<GramLattice> classes;
  std::vector<i64> multiplier;  // empty: all 1
  std::vector<std::string> provenance;

  i64 content(size_t i) const { return multiplier.empty() ? 1 : multiplier[i]; }
};

/// det(F) for the primitive form attached to L: det L if L is even, 2^n det L otherwise.
i64 form_disc(const GramLattice& l);
/// F = L for even L, 2L otherwise.
Mat form_matrix(const GramLattice& l);
/// Lattice of the form with second partials F (even diagonal); empty if the
/// form is not primitive.
std::optional<GramLattice> lattice_of_form_matrix(const Mat& f);

/// Gram matrices with determinant det satisfying the Minkowski conditions
/// used for enumeration (sorted diagonal, |2a_ij| <= a_ii, Hermite and
/// product bounds, a_1j <= 0); even_diag restricts to even diagonals.
std::vector<Mat> reduced_grams(int n, i64 det, bool even_diag);

/// All classes of primitive forms with discriminant D by reduced enumeration.
ClassSet classes_by_form_disc(int n, i64 D);

/// All p-neighbors (p odd, p not dividing d), LLL-reduced, one per isotropic line.
std::vector<GramLattice> p_neighbors(const GramLattice& l, i64 p);

struct GenusClasses {
  std::vector<GramLattice> classes;  // canonical
  std::vector<i64> aut;
  std::vector<int> part;             // spinor genus index per class
  int parts = 0;
  MassValue mass;
  std::vector<i64> primes;           // primes[0] has trivial idele image
  int g = 1, g_plus = 1;
};

/// Full class set of gen(L) by neighbor closure; throws IncompleteGenusError
/// when the mass certificate fails.
GenusClasses genus_classes(const GramLattice& l, int max_classes = 200000);

/// Proper classes per proper spinor genus. A class without an improper
/// automorph counts twice; when g = g+/2 each spinor genus halves.
std::vector<int> proper_spinor_sizes(const GenusClasses& gc);

/// Index-p sublattices of every seed form, deduplicated. Imprimitive
/// results are dropped unless keep_imprimitive is set.
ClassSet pall_ascend(const ClassSet& seed, i64 p, int jobs = 1, bool keep_imprimitive = false);

struct GenusReport {
  GenusSymbol symbol;
  i64 multiplier = 1;
  GenusClasses genus;
  std::vector<int> seen;  // indices of the input classes in genus.classes
  std::vector<int> h_s;   // classes per spinor genus
  bool equal_spinor_masses = true;
};

struct ClassificationReport {
  int rank = 4;
  i64 disc = 0;
  std::vector<GenusReport> genera;
  int total_classes() const;
};

/// Group the classes into genera and compute each genus with its spinor partition.
/// When complete_genera is false the neighbor closure is skipped and only
/// the symbols are reported.
using GenusSource = std::function<GenusClasses(const GramLattice&)>;
ClassificationReport classify(const ClassSet& cs, bool complete_genera = true, const GenusSource& source = {});
ClassificationReport classify(i64 D, int rank);

/// Union of the complete genus class sets of a report.
ClassSet complete_classes(const ClassificationReport& rep);

struct SweepStep {
  i64 disc = 0;
  ClassSet ascended;
  ClassificationReport report;
};
struct SweepOptions {
  int jobs = 1;
  bool keep_imprimitive = true;
  bool complete_last = false;  // genus closure on the final step too
  std::function<void(const SweepStep&)> progress;
  GenusSource source;  // replaces genus_classes, e.g. a cache
};
/// Repeated ascension at p; each step after the first is seeded with the
/// complete class sets of the genera found in the previous one.
std::vector<SweepStep> ascension_sweep(const ClassSet& seed, i64 p, int steps, const SweepOptions& opt = {});

struct OneClassSpinor {
  GramLattice lattice;
  int h = 0, h_s = 0, g = 0;
};
std::vector<OneClassSpinor> find_one_class_spinor(const std::vector<ClassificationReport>& reports);

/// h_s(L): number of classes in the spinor genus of L.
int spinor_class_number(const GramLattice& l);

}  // namespace quadlat
