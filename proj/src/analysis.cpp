#include "opinionsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "opinionsim/errors.hpp"

namespace opinionsim {

namespace {

double mean(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v, double m) {
    double ss = 0.0;
    for (double x : v) {
        const double d = x - m;
        ss += d * d;
    }
    return ss / static_cast<double>(v.size() - 1);
}

bool is_constant(std::span<const double> v) {
    for (double x : v) {
        if (x != v.front()) return false;
    }
    return true;
}

}  // namespace

std::optional<double> pearson_r(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InputError("pearson_r: series lengths differ");
    if (x.size() < 3) return std::nullopt;
    if (is_constant(x) || is_constant(y)) return std::nullopt;
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    const double denom = std::sqrt(sxx * syy);
    if (denom == 0.0) return std::nullopt;
    const double r = sxy / denom;
    return std::clamp(r, -1.0, 1.0);
}

namespace {

// Continued-fraction core of the incomplete beta function (Lentz's method).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIterations = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw InputError("incomplete beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    // Use the expansion on the side where the continued fraction converges fast.
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
    if (dof <= 0.0) throw InputError("student_t_cdf: dof must be positive");
    if (t == 0.0) return 0.5;
    const double x = dof / (dof + t * t);
    const double tail = 0.5 * regularized_incomplete_beta(dof / 2.0, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

double t_test_p(double r, std::size_t n) {
    if (n < 3) throw InputError("t_test_p: need n >= 3");
    if (!(r >= -1.0 && r <= 1.0)) throw InputError("t_test_p: r must lie in [-1, 1]");
    if (r == 1.0 || r == -1.0) return 0.0;
    const double dof = static_cast<double>(n - 2);
    const double t = r * std::sqrt(dof / (1.0 - r * r));
    // Two-sided: p = I_x(dof/2, 1/2) with x = dof / (dof + t^2).
    return regularized_incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
}

const char* significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "ns";
}

double welch_t_test_p(std::span<const double> a, std::span<const double> b, bool one_sided) {
    if (a.size() < 2 || b.size() < 2) throw InputError("welch test: need >= 2 samples per side");
    const double ma = mean(a);
    const double mb = mean(b);
    const double va = sample_variance(a, ma) / static_cast<double>(a.size());
    const double vb = sample_variance(b, mb) / static_cast<double>(b.size());
    const double se2 = va + vb;
    if (se2 == 0.0) {
        // Degenerate samples: identical means are maximally insignificant.
        if (ma == mb) return one_sided ? 0.5 : 1.0;
        return 0.0;
    }
    const double t = (ma - mb) / std::sqrt(se2);
    const double dof = se2 * se2 /
                       (va * va / static_cast<double>(a.size() - 1) +
                        vb * vb / static_cast<double>(b.size() - 1));
    if (one_sided) return 1.0 - student_t_cdf(t, dof);
    return 2.0 * (1.0 - student_t_cdf(std::abs(t), dof));
}

double binomial_upper_tail_half(std::size_t k, std::size_t n) {
    if (k == 0) return 1.0;
    if (k > n) return 0.0;
    // P(X >= k) for X ~ Binomial(n, p) equals I_p(k, n - k + 1).
    return regularized_incomplete_beta(static_cast<double>(k), static_cast<double>(n - k + 1),
                                       0.5);
}

double paired_sign_test_p(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InputError("sign test: sample sizes differ");
    std::size_t positive = 0, nonzero = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d == 0.0) continue;
        ++nonzero;
        if (d > 0.0) ++positive;
    }
    if (nonzero == 0) return 1.0;  // no evidence either way
    return binomial_upper_tail_half(positive, nonzero);
}

namespace {

struct ParameterColumn {
    const char* name;
    double SummaryRow::*field;
};

constexpr std::array<ParameterColumn, 5> kParameters = {{
    {"epsilon", &SummaryRow::epsilon},
    {"pro_nin", &SummaryRow::pro_nin},
    {"pro_ninl", &SummaryRow::pro_ninl},
    {"pro_nil", &SummaryRow::pro_nil},
    {"x_llm", &SummaryRow::x_llm},
}};

struct IndicatorColumn {
    const char* name;
    std::optional<double> SummaryRow::*field;
};

constexpr std::array<IndicatorColumn, 4> kIndicators = {{
    {"node_diff", &SummaryRow::node_diff},
    {"node_conv", &SummaryRow::node_conv},
    {"node_sd", &SummaryRow::node_sd},
    {"node_clus", &SummaryRow::node_clus},
}};

std::optional<double> SummaryRow::*indicator_field(std::string_view name) {
    for (const auto& col : kIndicators) {
        if (name == col.name) return col.field;
    }
    throw InputError("unknown indicator: " + std::string(name));
}

}  // namespace

std::vector<CorrelationCell> correlation_matrix(std::span<const SummaryRow> rows) {
    if (rows.empty()) throw InputError("correlation_matrix: no rows");
    std::vector<CorrelationCell> cells;
    cells.reserve(kParameters.size() * kIndicators.size() * kCategoryGroups.size());
    for (auto group : kCategoryGroups) {
        for (const auto& ind : kIndicators) {
            // Shared row filter per (group, indicator): only combos where the
            // indicator is defined participate.
            std::vector<double> y;
            std::vector<const SummaryRow*> used;
            for (const auto& row : rows) {
                if (row.group != group) continue;
                if (!(row.*(ind.field)).has_value()) continue;
                y.push_back(*(row.*(ind.field)));
                used.push_back(&row);
            }
            for (const auto& par : kParameters) {
                std::vector<double> x;
                x.reserve(used.size());
                for (const SummaryRow* row : used) x.push_back(row->*(par.field));

                CorrelationCell cell;
                cell.parameter = par.name;
                cell.indicator = ind.name;
                cell.group = group;
                cell.n = y.size();
                const auto r = y.size() >= 3 ? pearson_r(x, y) : std::nullopt;
                if (!r.has_value()) {
                    cell.missing = true;
                    cell.stars = "nan";
                } else {
                    cell.r = *r;
                    cell.p = t_test_p(*r, y.size());
                    cell.stars = significance_stars(*cell.p);
                }
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

std::optional<ExtremeTarget> extreme_target_from_string(std::string_view s) {
    if (s == "min") return ExtremeTarget::Min;
    if (s == "max") return ExtremeTarget::Max;
    if (s == "polarization") return ExtremeTarget::Polarization;
    return std::nullopt;
}

const char* to_string(ExtremeTarget t) {
    switch (t) {
        case ExtremeTarget::Min: return "min";
        case ExtremeTarget::Max: return "max";
        case ExtremeTarget::Polarization: return "polarization";
    }
    return "?";
}

ExtremeReport extremal_combos(std::span<const SummaryRow> rows, std::string_view indicator,
                              ExtremeTarget target, int k, CategoryGroup group) {
    auto field = indicator_field(indicator);
    struct Candidate {
        double key;  // smaller is better
        double value;
        const SummaryRow* row;
    };
    std::vector<Candidate> candidates;
    for (const auto& row : rows) {
        if (row.group != group) continue;
        if (!(row.*field).has_value()) continue;
        const double v = *(row.*field);
        double key = 0.0;
        switch (target) {
            case ExtremeTarget::Min: key = v; break;
            case ExtremeTarget::Max: key = -v; break;
            case ExtremeTarget::Polarization: key = std::abs(v - 2.0); break;
        }
        candidates.push_back({key, v, &row});
    }
    if (candidates.empty()) {
        throw AnalysisError("extremal_combos: no defined rows for indicator " +
                            std::string(indicator));
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.key < b.key; });

    // All exact ties at the extreme when there are several; otherwise top k.
    std::size_t selected = 1;
    while (selected < candidates.size() && candidates[selected].key == candidates[0].key) {
        ++selected;
    }
    if (selected < 2) {
        selected = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 1)),
                                         candidates.size());
    }

    ExtremeReport report;
    report.indicator = std::string(indicator);
    report.target = target;
    report.group = group;
    report.combos_averaged = static_cast<int>(selected);
    for (std::size_t i = 0; i < selected; ++i) {
        const SummaryRow& row = *candidates[i].row;
        report.epsilon += row.epsilon;
        report.pro_nin += row.pro_nin;
        report.pro_ninl += row.pro_ninl;
        report.pro_nil += row.pro_nil;
        report.x_llm += row.x_llm;
    }
    const double inv = 1.0 / static_cast<double>(selected);
    report.epsilon *= inv;
    report.pro_nin *= inv;
    report.pro_ninl *= inv;
    report.pro_nil *= inv;
    report.x_llm *= inv;
    return report;
}

ExtremeStrategyReport compare_extreme_strategies(std::span<const SummaryRow> rows) {
    struct Family {
        const char* name;
        double SummaryRow::*proportion;
        std::vector<double> sd;
        std::vector<double> clus;
    };
    std::array<Family, 3> families = {{
        {"none", &SummaryRow::pro_nin, {}, {}},
        {"partial", &SummaryRow::pro_ninl, {}, {}},
        {"full", &SummaryRow::pro_nil, {}, {}},
    }};

    std::size_t expected = 0;
    {
        // Family size = number of distinct (epsilon, x_llm) cells present.
        std::vector<std::pair<double, double>> cells;
        for (const auto& row : rows) {
            if (row.group != CategoryGroup::All) continue;
            cells.emplace_back(row.epsilon, row.x_llm);
        }
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        expected = cells.size();
    }

    for (const auto& row : rows) {
        if (row.group != CategoryGroup::All) continue;
        for (auto& fam : families) {
            if (row.*(fam.proportion) == 1.0) {
                if (!row.node_sd.has_value() || !row.node_clus.has_value()) {
                    throw InputError("pure-strategy family row misses node_sd/node_clus");
                }
                fam.sd.push_back(*row.node_sd);
                fam.clus.push_back(*row.node_clus);
            }
        }
    }
    for (const auto& fam : families) {
        if (fam.sd.size() != expected || fam.sd.empty()) {
            throw InputError(std::string("incomplete pure-strategy family '") + fam.name +
                             "': expected " + std::to_string(expected) + " cells, found " +
                             std::to_string(fam.sd.size()));
        }
    }

    ExtremeStrategyReport report;
    const auto& none = families[0];
    for (const auto& fam : families) {
        StrategyFamilyStats stats;
        stats.family = fam.name;
        stats.cells = static_cast<int>(fam.sd.size());
        stats.mean_node_sd = mean(fam.sd);
        stats.mean_node_clus = mean(fam.clus);
        if (&fam != &none) {
            stats.welch_p_sd_vs_none = welch_t_test_p(fam.sd, none.sd, false);
            stats.welch_p_clus_vs_none = welch_t_test_p(fam.clus, none.clus, false);
        }
        report.families.push_back(std::move(stats));
    }
    const double none_sd = report.families[0].mean_node_sd;
    report.sd_ratio_partial_over_none =
        none_sd > 0.0 ? report.families[1].mean_node_sd / none_sd
                      : std::numeric_limits<double>::quiet_NaN();
    return report;
}

}  // namespace opinionsim
