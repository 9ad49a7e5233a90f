#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace lowdeg {

// Finite discrete prior with mean 0 and variance 1.
class PriorSpec {
 public:
  PriorSpec() = default;
  PriorSpec(std::string name, std::vector<double> points, std::vector<double> probs);

  static PriorSpec rademacher();
  // {-a, 0, a} with P(+-a) = 1/(2K), a = sqrt(K); requires K >= 1.
  static PriorSpec three_point(double K);

  const std::string& name() const { return name_; }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& probs() const { return probs_; }
  double moment(int k) const;      // E pi^k
  double abs_moment(int k) const;  // E |pi|^k
  double K() const { return moment(4); }
  double M(int k) const;  // max_{j <= k} E|pi|^j

 private:
  static constexpr int kMaxOrder = 24;
  std::string name_;
  std::vector<double> points_, probs_;
  std::vector<double> moments_, abs_moments_;
};

struct SubmatrixParams {
  int n = 0;
  double lambda = 0.0;
  double rho = 0.0;
};

struct PdsParams {
  int n = 0;
  double rho = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;
  // (p1 - p0) / sqrt(p0 (1 - p0))
  double lambda_sub() const;
  // (p1 - p0) / (p0 (1 - p0))
  double eta() const;
};

struct WignerParams {
  int n = 0;
  int m = 1;
  double lambda = 0.0;
  PriorSpec prior = PriorSpec::rademacher();
};

struct SbmParams {
  int n = 0;
  int q = 2;
  std::vector<double> pi;
  Eigen::MatrixXd Q;
  double d() const;  // E Q_{s1 s2}
  double pi_min() const;
  double Q_min() const;
  double Q_max() const;
  double degree_condition_residual() const;
};

using ModelParams = std::variant<SubmatrixParams, PdsParams, WignerParams, SbmParams>;

std::string model_name(const ModelParams& p);
int model_n(const ModelParams& p);

// Throw ValidationError on invalid parameters.
void validate(const SubmatrixParams& p);
void validate(const PdsParams& p);
void validate(const WignerParams& p);
void validate(const SbmParams& p);
void validate(const ModelParams& p);

// Y is stored as a full symmetric n x n matrix. Graph models have a zero
// diagonal; Gaussian models carry unit-variance noise on the diagonal.
struct Sample {
  Eigen::MatrixXd Y;
  Eigen::VectorXd theta;  // submatrix, PDS
  Eigen::MatrixXd U;      // Wigner, n x m
  std::vector<int> sigma; // SBM, labels in [0, q)
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Draw order: latent variables in index order, then the upper triangle of Y
// row by row (i <= j for Gaussian models, i < j for graph models).
Sample sample(const ModelParams& params, std::uint64_t seed, std::uint64_t stream = 0);

double estimand(const ModelParams& params, const Sample& s);
// SBM indicator estimand (1{s1 = k} - pi_k)(1{s2 = l} - pi_l), labels 0-based.
double estimand_kl(const SbmParams& params, const Sample& s, int k, int l);

double second_moment_x(const ModelParams& params);
double second_moment_x_kl(const SbmParams& params, int k, int l);

}  // namespace lowdeg
