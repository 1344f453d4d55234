#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opinionsim/indicators.hpp"

namespace opinionsim {

/// Product-moment correlation, or nothing if either series is constant or
/// shorter than 3.
std::optional<double> pearson_r(std::span<const double> x, std::span<const double> y);

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation, accurate to ~1e-14 for moderate arguments.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of Student's t with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

/// Two-sided p-value of r under the null of zero correlation, from
/// t = r * sqrt((n-2) / (1-r^2)) against Student's t with n-2 dof.
/// |r| = 1 yields exactly 0.
double t_test_p(double r, std::size_t n);

/// Significance bands: *** p<0.001, ** p<0.01, * p<0.05, ns otherwise.
const char* significance_stars(double p);

/// Welch's unequal-variance two-sample t-test. One-sided tests
/// H1: mean(a) > mean(b).
double welch_t_test_p(std::span<const double> a, std::span<const double> b, bool one_sided);

/// Upper tail P(X >= k) of Binomial(n, 1/2), via the incomplete beta.
double binomial_upper_tail_half(std::size_t k, std::size_t n);

/// One-sided paired sign test over matched samples: H1 median(a - b) > 0.
/// Exact ties are dropped, as usual.
double paired_sign_test_p(std::span<const double> a, std::span<const double> b);

struct CorrelationCell {
    std::string parameter;  // epsilon | pro_nin | pro_ninl | pro_nil | x_llm
    std::string indicator;  // node_diff | node_conv | node_sd | node_clus
    CategoryGroup group = CategoryGroup::All;
    std::optional<double> r;
    std::optional<double> p;
    std::string stars;   // significance band, or "nan" when missing
    bool missing = false;  // constant or insufficient series
    std::size_t n = 0;     // rows used
};

/// Pearson r and significance of every (parameter, indicator, group) pair
/// over the sweep rows. Rows whose indicator is undefined are dropped per
/// cell; a constant surviving series is reported missing, not zero.
std::vector<CorrelationCell> correlation_matrix(std::span<const SummaryRow> rows);

enum class ExtremeTarget { Min, Max, Polarization };

std::optional<ExtremeTarget> extreme_target_from_string(std::string_view s);
const char* to_string(ExtremeTarget t);

struct ExtremeReport {
    std::string indicator;
    ExtremeTarget target = ExtremeTarget::Max;
    CategoryGroup group = CategoryGroup::All;
    double epsilon = 0.0;
    double pro_nin = 0.0;
    double pro_ninl = 0.0;
    double pro_nil = 0.0;
    double x_llm = 0.0;
    int combos_averaged = 0;
};

/// Average the five parameters over the combos attaining an indicator
/// extreme: all exact ties when they exist, otherwise the k combos nearest
/// the target. Polarization targets the cluster count nearest 2.
ExtremeReport extremal_combos(std::span<const SummaryRow> rows, std::string_view indicator,
                              ExtremeTarget target, int k = 10,
                              CategoryGroup group = CategoryGroup::All);

/// Statistics of one pure usage-strategy family (all agents share one
/// category): the grid cells with that proportion equal to 1.
struct StrategyFamilyStats {
    std::string family;  // none | partial | full
    int cells = 0;
    double mean_node_sd = 0.0;
    double mean_node_clus = 0.0;
    std::optional<double> welch_p_sd_vs_none;
    std::optional<double> welch_p_clus_vs_none;
};

struct ExtremeStrategyReport {
    std::vector<StrategyFamilyStats> families;  // none, partial, full
    double sd_ratio_partial_over_none = 0.0;
};

/// Compare the three pure-strategy families over their full epsilon x x_llm
/// cell sets. Incomplete families are an input error.
ExtremeStrategyReport compare_extreme_strategies(std::span<const SummaryRow> rows);

}  // namespace opinionsim
