#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prerep/weyl.hpp"

namespace prerep {

/// Dense n x n matrix of exact scalars, row-major.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  explicit ExactMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n) {}

  int size() const { return n_; }
  ExactScalar& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * n_ + c]; }
  const ExactScalar& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * n_ + c]; }

  ExactScalar trace() const;
  bool is_hermitian() const;
  bool is_zero() const;
  ExactMatrix adjoint() const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix scaled(const ExactScalar& s) const;
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

 private:
  int n_ = 0;
  std::vector<ExactScalar> data_;
};

enum class Metric { Minkowski, Euclidean };

/// How the scalar I entering the x_mu denominators is read.
/// Printed: I = sum c_kk'(u_1k v_1k' - v_1k u_1k') + c.c.
/// Imaginary: the same bracket multiplied by i before adding its conjugate.
enum class InvariantPhase { Printed, Imaginary };

struct ModelConfig {
  int n = 2;
  int sets = 2;
  /// Real antisymmetric n x n matrix; empty means the default (c_12 = 1).
  std::vector<std::vector<mpq_class>> c;
  Metric metric = Metric::Minkowski;
  InvariantPhase phase = InvariantPhase::Printed;

  /// Fills the default c and checks the invariants. Throws DomainError.
  void validate();
  bool has_nonzero_c() const;
};

struct SuGenerator {
  std::string label;
  ExactMatrix matrix;
  WeylOperator op;
};

/// I, z_{mu,kk'}, and x_mu = (sum c_kk' z_{mu,kk'}) / I for one variable set.
struct XFunctions {
  PolyFunction invariant;
  std::array<PolyFunction, 4> numerators;
  std::array<RationalFunction, 4> x;
  std::map<std::pair<int, int>, std::array<PolyFunction, 4>> z;
};

/// O2 = sum_k shape[k] * s^k with s = sum_mu g_mu (x_mu^(m) - x_mu^(m'))^2.
struct InteractionDescriptor {
  int set_a = 1;
  int set_b = 2;
  std::vector<ExactScalar> shape;
  Metric metric = Metric::Minkowski;
  RationalFunction s;

  /// f'(s) coefficients.
  std::vector<ExactScalar> shape_derivative() const;
  bool is_constant_shape() const;
  /// Full rational function; may hit the term cap for high-degree shapes.
  RationalFunction materialize() const;
};

struct SetGenerators {
  int set = 1;
  std::array<WeylOperator, 3> J;
  std::array<WeylOperator, 3> K;
  std::array<WeylOperator, 4> P;
  WeylOperator O1;
  std::vector<SuGenerator> su;
  std::optional<XFunctions> x;
};

struct GeneratorCatalog {
  ModelConfig config;
  std::vector<SetGenerators> sets;
  std::array<WeylOperator, 4> P_total;
  std::optional<InteractionDescriptor> interaction;

  const SetGenerators& set(int m) const;
};

struct CatalogOptions {
  bool with_su = true;
  bool with_x = true;
  bool with_interaction = true;
  std::vector<ExactScalar> interaction_shape{ExactScalar(0), ExactScalar(1)};
};

struct LorentzGenerators {
  std::array<WeylOperator, 3> J;
  std::array<WeylOperator, 3> K;
};

LorentzGenerators build_lorentz(const ModelConfig& cfg, int set);
std::array<WeylOperator, 4> build_translations(const ModelConfig& cfg, int set);
WeylOperator build_O1(const ModelConfig& cfg, int set);
/// Validates that T is Hermitian and traceless.
WeylOperator build_su_generator(const ModelConfig& cfg, int set, const ExactMatrix& T);
/// Same construction without the Hermiticity/trace checks; linear in T.
WeylOperator su_generator_linear(int n, int set, const ExactMatrix& T);
/// Generalized Gell-Mann basis with rational normalization: S_jk, A_jk, D_l.
std::vector<std::pair<std::string, ExactMatrix>> su_basis(int n);
XFunctions build_x(const ModelConfig& cfg, int set);
InteractionDescriptor build_interaction(const ModelConfig& cfg, const XFunctions& xa, int set_a, const XFunctions& xb,
                                        int set_b, std::vector<ExactScalar> shape);
std::array<WeylOperator, 4> build_total_P(const ModelConfig& cfg);

GeneratorCatalog build_catalog(ModelConfig cfg, const CatalogOptions& opts = {});

/// Deterministic JSON description of every operator (term lists).
nlohmann::json catalog_to_json(const GeneratorCatalog& cat);
nlohmann::json operator_to_json(const WeylOperator& op);
WeylOperator operator_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ModelConfig& cfg);

/// Loads a memoized catalog from $PREREP_CACHE_DIR when present, else builds
/// it and stores the operator dump there.
GeneratorCatalog load_or_build_catalog(ModelConfig cfg, const CatalogOptions& opts = {});

}  // namespace prerep
