#include "mobrkhs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mobrkhs/homogeneous.hpp"
#include "mobrkhs/sweeps.hpp"

namespace mobrkhs::verify {

namespace {

using Complex = std::complex<double>;
using decompose::BidiscDecomposition;
using moebius::MoebiusTransform;
using polyspace::PolyFunction;
using polyspace::TensorSpace;

class RowCollector {
public:
    explicit RowCollector(const std::map<std::string, double>& overrides) : overrides_(overrides) {}

    /// pass iff residual <= tolerance
    void add(const std::string& name, double residual, double tolerance) {
        if (auto it = overrides_.find(name); it != overrides_.end()) tolerance = it->second;
        rows_.push_back({name, residual, tolerance, residual <= tolerance});
    }

    /// pass iff value >= threshold (negative controls, gap certificates)
    void add_margin(const std::string& name, double value, double threshold) {
        if (auto it = overrides_.find(name); it != overrides_.end()) threshold = it->second;
        rows_.push_back({name, value, threshold, value >= threshold});
    }

    std::vector<CheckRow> take() { return std::move(rows_); }

private:
    std::map<std::string, double> overrides_;
    std::vector<CheckRow> rows_;
};

double moebius_group_law_residual(sweeps::Rng& rng) {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = rng.next_transform(0.6);
        const auto g = rng.next_transform(0.6);
        const auto h = rng.next_transform(0.6);
        const auto left = moebius::compose(moebius::compose(f, g), h);
        const auto right = moebius::compose(f, moebius::compose(g, h));
        const auto probe = rng.next_disc(0.7);
        worst = std::max(worst, std::abs(left(probe) - right(probe)));
        const auto id = moebius::compose(f, f.inverse());
        worst = std::max(worst, std::abs(id(probe) - probe));
    }
    return worst;
}

double chain_rule_residual(sweeps::Rng& rng) {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = rng.next_transform(0.6);
        const auto g = rng.next_transform(0.6);
        const Complex z = rng.next_disc(0.7);
        const Complex lhs = moebius::compose(f, g).derivative(z);
        const Complex rhs = f.derivative(g(z)) * g.derivative(z);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double branch_consistency_residual(sweeps::Rng& rng) {
    // log chi' - log phi'(psi .) - log psi' must be a z-independent element of 2 pi i Z.
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = rng.next_transform(0.6);
        const auto g = rng.next_transform(0.6);
        const auto fg = moebius::compose(f, g);
        Complex base;
        for (int i = 0; i < 12; ++i) {
            const Complex z = rng.next_disc(0.7);
            const Complex gap = fg.log_derivative(z) - f.log_derivative(g(z)) - g.log_derivative(z);
            if (i == 0) {
                base = gap;
                const double cycles = gap.imag() / kTwoPi;
                worst = std::max(worst, std::abs(cycles - std::round(cycles)) * kTwoPi);
                worst = std::max(worst, std::abs(gap.real()));
            } else {
                worst = std::max(worst, std::abs(gap - base));
            }
        }
    }
    return worst;
}

double kernel_vector_group_law_residual(const std::vector<double>& lambdas, sweeps::Rng& rng) {
    // Applying the Eq-(2.8)-style kernel action for phi then psi must agree with
    // the action of psi o phi up to a w-independent unimodular scalar.
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        const auto phi = rng.next_transform(0.5);
        const auto psi = rng.next_transform(0.5);
        const auto chain = moebius::compose(psi, phi);
        for (double lambda : lambdas) {
            Complex base = 0.0;
            for (int i = 0; i < 10; ++i) {
                const Complex w = rng.next_disc(0.6);
                // action: K(., w) -> conj(c(phi, w)) K(., phi w)
                const Complex two_steps =
                    std::conj(moebius::cocycle_eval(lambda, phi, w)) *
                    std::conj(moebius::cocycle_eval(lambda, psi, phi(w)));
                const Complex one_step = std::conj(moebius::cocycle_eval(lambda, chain, w));
                const Complex scalar = two_steps / one_step;
                if (i == 0) {
                    base = scalar;
                    worst = std::max(worst, std::abs(std::abs(scalar) - 1.0));
                } else {
                    worst = std::max(worst, std::abs(scalar - base));
                }
            }
        }
    }
    return worst;
}

double kernel_positivity_defect(const std::vector<double>& lambdas, sweeps::Rng& rng) {
    double defect = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const int npts = 8;
        Eigen::MatrixXcd gram(npts, npts);
        std::vector<Complex> pts;
        for (int i = 0; i < npts; ++i) pts.push_back(rng.next_disc(0.8));
        for (int i = 0; i < npts; ++i) {
            for (int j = 0; j < npts; ++j) {
                Complex k = 1.0;
                for (double lambda : lambdas) k *= discspace::kernel_eval(lambda, pts[i], pts[j]);
                gram(i, j) = k;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
        defect = std::max(defect, std::max(0.0, -eig.eigenvalues().minCoeff()));
    }
    return defect;
}

double reproducing_property_residual(const TensorSpace& space, sweeps::Rng& rng) {
    // <p, K_N(., w)> = p(w) exactly for monomials at truncation.
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        const std::array<Complex, 2> w = {rng.next_disc(0.5), rng.next_disc(0.5)};
        for (int idx : {0, 1, space.basis().size() / 2, space.basis().size() - 1}) {
            PolyFunction p = polyspace::zero_function(space);
            p.coeffs[idx] = 1.0;
            PolyFunction kw = polyspace::zero_function(space);
            for (int i = 0; i < space.basis().size(); ++i) {
                const auto& e = space.basis().exponent(i);
                Complex mono = 1.0;
                for (int v = 0; v < 2; ++v) {
                    for (int k = 0; k < e[v]; ++k) mono *= std::conj(w[v]);
                }
                kw.coeffs[i] = mono / space.gram(i);
            }
            const Complex lhs = polyspace::inner_product(p, kw, space);
            const Complex rhs = polyspace::eval(p, space, w);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

double truncation_exactness_residual(const TensorSpace& space, const BidiscDecomposition& dec) {
    // Every summand vector must be Gram-orthogonal to the spanning set of the
    // next filtration level.
    double worst = 0.0;
    for (int m = 0; m + 1 <= space.degree(); ++m) {
        const auto& basis = dec.basis(m);
        if (basis.empty()) continue;
        const auto deeper = decompose::vanishing_filtration_basis(space, m + 1, dec.parity());
        for (const PolyFunction& v : basis.vectors) {
            for (const PolyFunction& w : deeper) {
                const double scale = polyspace::norm(w, space);
                worst = std::max(worst,
                                 std::abs(polyspace::inner_product(v, w, space)) / scale);
            }
        }
    }
    return worst;
}

std::pair<double, double> completeness_residual(const TensorSpace& space,
                                                const BidiscDecomposition& dec) {
    int total = 0;
    std::vector<const PolyFunction*> all;
    for (int m = 0; m <= dec.max_m(); ++m) {
        total += dec.basis(m).dim();
        for (const PolyFunction& v : dec.basis(m).vectors) all.push_back(&v);
    }
    int expected = 0;
    if (dec.parity() == decompose::Parity::none) {
        expected = space.basis().size();
    } else {
        for (int i = 0; i < space.basis().size(); ++i) {
            const auto& e = space.basis().exponent(i);
            if (dec.parity() == decompose::Parity::symmetric ? e[0] >= e[1] : e[0] > e[1]) ++expected;
        }
    }
    double ortho = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const Complex ip = polyspace::inner_product(*all[i], *all[j], space);
            ortho = std::max(ortho, std::abs(ip - (i == j ? 1.0 : 0.0)));
        }
    }
    return {std::abs(total - expected), ortho};
}

double reducing_property_residual(const TensorSpace& space, const BidiscDecomposition& dec,
                                  sweeps::Rng& rng) {
    // The truncated multiplier action maps each summand into itself: cross
    // components vanish.
    double worst = 0.0;
    for (int trial = 0; trial < 2; ++trial) {
        const auto phi = rng.next_transform(0.4);
        const Eigen::MatrixXcd pi = homogeneous::pi_matrix(space, phi);
        for (int m = 0; m <= dec.max_m(); ++m) {
            const auto& from = dec.basis(m);
            for (const PolyFunction& v : from.vectors) {
                Eigen::VectorXcd coords(space.basis().size());
                for (int i = 0; i < space.basis().size(); ++i) {
                    coords[i] = v.coeffs[i] * std::sqrt(space.gram(i));
                }
                const Eigen::VectorXcd image = pi * coords;
                for (int mp = 0; mp <= dec.max_m(); ++mp) {
                    if (mp == m) continue;
                    for (const PolyFunction& u : dec.basis(mp).vectors) {
                        Complex ip = 0.0;
                        for (int i = 0; i < space.basis().size(); ++i) {
                            ip += image[i] * std::conj(u.coeffs[i]) * std::sqrt(space.gram(i));
                        }
                        worst = std::max(worst, std::abs(ip));
                    }
                }
            }
        }
    }
    return worst;
}

double nonemptiness_agreement(const TensorSpace& space, const BidiscDecomposition& dec) {
    // emptiness criterion at the origin versus a diagonal sample; both must
    // agree with the actual basis dimension for every summand
    double mismatches = 0.0;
    for (int m = 0; m <= dec.max_m(); ++m) {
        const bool empty = dec.basis(m).empty();
        const bool origin_empty = decompose::summand_mass(space, dec.basis(m), 0.0) <= 1e-10;
        const bool diag_empty = decompose::summand_mass(space, dec.basis(m), Complex(0.2, 0.1)) <= 1e-10;
        if (origin_empty != empty || diag_empty != empty) mismatches += 1.0;
    }
    return mismatches;
}

double eq211_residual(const TensorSpace& space, const BidiscDecomposition& dec) {
    // compares the truncated kernel to the closed transformation law at radius
    // 0.2; needs ten retained series terms to keep the tail below tolerance
    double worst = 0.0;
    const std::array<Complex, 3> grid = {Complex(0.2, 0.0), Complex(0.0, 0.15), Complex(0.1, -0.12)};
    for (int m = 0; m <= std::min({3, dec.max_m(), space.degree() - 9}); ++m) {
        if (dec.basis(m).empty()) continue;
        for (Complex z : grid) {
            const auto inv = MoebiusTransform::involution_at(z);
            const Complex cm = decompose::diagonal_cocycle(space, m, inv, z);
            const double lhs = dec.kernel(m).eval_diagonal(z);
            const double rhs = std::norm(cm) * dec.kernel(m).k00();
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

double f_factor_consistency(const BidiscDecomposition& dec) {
    // K_0(z, w) / (F(z) conj(F(w))) must match the truncated B^(lambda_hat) series.
    double worst = 0.0;
    const std::array<Complex, 4> grid = {Complex(0.0, 0.0), Complex(0.2, 0.0), Complex(0.0, 0.2),
                                         Complex(0.15, 0.1)};
    int m0 = 0;
    while (dec.basis(m0).empty()) ++m0;
    const int window = dec.space().degree() - m0;
    for (Complex z : grid) {
        for (Complex w : grid) {
            const Complex lhs = dec.kernel(m0).eval(z, w) / (dec.f_factor(z) * std::conj(dec.f_factor(w)));
            const Complex rhs =
                discspace::kernel_eval_truncated(dec.lambda_hat() + 2.0 * m0, z, w, window);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

}  // namespace

bool SuiteResult::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

SuiteResult run_bidisc_suite(const Options& options) {
    if (options.lambdas.size() != 2) {
        throw std::invalid_argument("verify: the bidisc suite needs exactly two weights");
    }
    RowCollector rows(options.tolerance_overrides);
    sweeps::Rng rng(options.seed);

    TensorSpace space = TensorSpace::tensor(options.lambdas, options.degree);
    if (options.inject_noise > 0.0) space = space.perturbed(options.inject_noise, options.seed);

    // --- group and cocycle layer ---
    rows.add("moebius_group_laws", moebius_group_law_residual(rng), 1e-12);
    rows.add("moebius_chain_rule", chain_rule_residual(rng), 1e-12);
    rows.add("moebius_branch_consistency", branch_consistency_residual(rng), 1e-10);

    const auto samples = sweeps::random_transform_samples(options.seed, 1000);
    rows.add("kernel_transform_rule", sweeps::max_kernel_transform_residual(samples), 1e-9);
    rows.add("kernel_vector_group_law", kernel_vector_group_law_residual(options.lambdas, rng), 1e-10);
    rows.add("kernel_positivity_defect", kernel_positivity_defect(options.lambdas, rng), 1e-10);

    double min_cocycle = 1e300;
    for (const auto& s : samples) {
        min_cocycle = std::min(min_cocycle, std::abs(moebius::cocycle_eval(s.lambda, s.phi, s.z)));
    }
    rows.add_margin("cocycle_nonvanishing_margin", min_cocycle, 1e-6);

    const auto points = sweeps::random_bidisc_points(options.seed + 1, 200);
    const auto phi_c = rng.next_transform(0.4);
    const auto psi_c = rng.next_transform(0.4);
    const auto cocycle_check =
        sweeps::cocycle_identity_sweep(options.lambdas, phi_c, psi_c, points);
    rows.add("cocycle_identity_deviation", cocycle_check.deviation, 1e-9);
    rows.add("cocycle_identity_unimodularity", cocycle_check.unimodularity, 1e-9);

    const decompose::BidiscCocycle perturbed_cocycle =
        [l = options.lambdas](const MoebiusTransform& p, const std::array<Complex, 2>& x) {
            return moebius::cocycle_eval(l[0], p, x[0]) * moebius::cocycle_eval(l[1], p, x[1]) *
                   (1.0 + 0.01 * x[0]);
        };
    rows.add_margin("cocycle_negative_control_margin",
                    decompose::cocycle_identity_check(perturbed_cocycle, phi_c, psi_c, points).deviation,
                    1e-4);

    // --- decomposition layer ---
    const BidiscDecomposition dec(space);
    const auto& grid = decompose::default_residual_grid();

    for (int m = 0; m <= 3; ++m) {
        rows.add("summand_kernel_law_m" + std::to_string(m),
                 sweeps::max_summand_law_residual(dec, m, grid), 1e-7);
    }
    double two_route = 0.0;
    for (int m = 0; m <= 3; ++m) two_route = std::max(two_route, dec.two_route_residual(m, grid));
    rows.add("kernel_two_route_agreement", two_route, 1e-7);

    double ladder = 0.0;
    for (int m = 0; m + 1 <= space.degree() - 4; ++m) {
        ladder = std::max(ladder,
                          std::abs(dec.summand_parameter(m + 1) - dec.summand_parameter(m) - 2.0));
    }
    rows.add("parameter_ladder", ladder, 1e-4);
    rows.add("lambda_hat_identification",
             std::abs(dec.lambda_hat() - (options.lambdas[0] + options.lambdas[1])), 1e-4);

    double curvature = 0.0;
    for (double l : {1.0, 2.0, 3.0, 5.5}) {
        const double got =
            decompose::identify_lambda([l](Complex z) { return std::pow(1.0 - std::norm(z), -l); });
        curvature = std::max(curvature, std::abs(got - l));
    }
    rows.add("curvature_bergman_recovery", curvature, 1e-5);
    const double with_factor = decompose::identify_lambda([](Complex z) {
        return std::norm(1.0 + z / 3.0) * std::pow(1.0 - std::norm(z), -2.5);
    });
    rows.add("curvature_f_invariance", std::abs(with_factor - 2.5), 1e-5);

    const auto [dim_defect, ortho] = completeness_residual(space, dec);
    rows.add("completeness_dimension", dim_defect, 0.0);
    rows.add("union_orthonormality", ortho, 1e-12);
    // beyond eighteen degrees the binomial coefficients of the deep filtration
    // vectors push the double-representation noise of exact-zero inner
    // products past 1e-12; the check is only meaningful below that
    if (options.degree <= 18) {
        rows.add("truncation_exactness", truncation_exactness_residual(space, dec), 1e-12);
    }
    rows.add("reducing_property", reducing_property_residual(space, dec, rng), 1e-6);
    rows.add("nonemptiness_agreement", nonemptiness_agreement(space, dec), 0.0);
    if (options.degree >= 9) rows.add("eq_diagonal_cocycle", eq211_residual(space, dec), 1e-7);
    rows.add("f_factor_consistency", f_factor_consistency(dec), 1e-7);
    rows.add("reproducing_property", reproducing_property_residual(space, rng), 1e-12);

    bool monotone = true;
    {
        const auto w1 = discspace::shift_weights(1.0, 16);
        for (double v : w1) monotone = monotone && std::abs(v - 1.0) < 1e-15;
        for (double l : {1.5, 3.0}) {
            const auto w = discspace::shift_weights(l, 16);
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                monotone = monotone && w[i] < w[i + 1] && w[i] > 0.0 && w[i] <= 1.0;
            }
        }
    }
    rows.add("shift_weight_monotonicity", monotone ? 0.0 : 1.0, 0.0);

    // --- homogeneous-pair layer ---
    rows.add("filtration_invariance",
             homogeneous::filtration_invariance_check(space, std::min(2, space.degree() - 2)), 0.0);

    nlohmann::json report;
    {
        const Eigen::MatrixXd b1 = homogeneous::block_structure_report(dec, 1);
        const Eigen::MatrixXd b2 = homogeneous::block_structure_report(dec, 2);
        double upper = 0.0;
        nlohmann::json blocks = nlohmann::json::array();
        for (int n = 0; n < b1.rows(); ++n) {
            nlohmann::json row = nlohmann::json::array();
            for (int m = 0; m < b1.cols(); ++m) {
                const double v = std::max(b1(n, m), b2(n, m));
                row.push_back(v);
                if (n < m) upper = std::max(upper, v);
            }
            blocks.push_back(row);
        }
        report["blocks"] = blocks;
        if (options.degree <= 18) rows.add("block_upper_triangular", upper, 1e-12);
    }

    {
        double degree_grading = 0.0;
        for (int coord = 1; coord <= 2; ++coord) {
            const Eigen::MatrixXcd mult = homogeneous::multiplication_matrix(space, coord);
            for (int r = 0; r < mult.rows(); ++r) {
                for (int c = 0; c < mult.cols(); ++c) {
                    if (space.basis().total_degree(r) != space.basis().total_degree(c) + 1) {
                        degree_grading = std::max(degree_grading, std::abs(mult(r, c)));
                    }
                }
            }
        }
        rows.add("multiplication_degree_grading", degree_grading, 0.0);
    }

    {
        nlohmann::json diagonal = nlohmann::json::array();
        double agreement = 0.0;
        for (int n = 0; n <= 3; ++n) {
            const auto w1 = homogeneous::diagonal_block_weights(dec, 1, n);
            const auto w2 = homogeneous::diagonal_block_weights(dec, 2, n);
            for (std::size_t k = 0; k < std::min(w1.size(), w2.size()); ++k) {
                agreement = std::max(agreement, std::abs(w1[k] - w2[k]));
            }
            const double lambda_prime = dec.lambda_hat() + 2.0 * n;
            const double dev = homogeneous::shift_equivalence_check(w1, lambda_prime);
            rows.add("shift_equivalence_n" + std::to_string(n), dev, 1e-9);
            diagonal.push_back({{"n", n}, {"lambda_prime", lambda_prime}, {"max_weight_dev", dev}});
        }
        report["diagonal"] = diagonal;
        rows.add("diagonal_weights_agreement", agreement, 1e-10);

        const auto w0 = homogeneous::diagonal_block_weights(dec, 1, 0);
        rows.add_margin("shift_negative_control_margin",
                        homogeneous::shift_equivalence_check(w0, dec.lambda_hat() + 1.0), 1e-2);
    }

    {
        nlohmann::json intertwining = nlohmann::json::array();
        const int block = space.degree() / 2;
        const std::vector<MoebiusTransform> phis = {
            MoebiusTransform::rotation(1.1), MoebiusTransform(0.7, Complex(0.3, 0.0)),
            MoebiusTransform(2.1, Complex(-0.15, 0.2))};
        double generic = 0.0, rotation = 0.0;
        for (const auto& phi : phis) {
            const bool is_rotation = std::abs(phi.a()) == 0.0;
            const double res =
                homogeneous::intertwining_check(space, phi, is_rotation ? space.degree() : block);
            if (is_rotation) {
                rotation = std::max(rotation, res);
            } else {
                generic = std::max(generic, res);
            }
            intertwining.push_back({{"phi_params",
                                     {{"theta", phi.theta()},
                                      {"a_re", phi.a().real()},
                                      {"a_im", phi.a().imag()}}},
                                    {"residual", res}});
        }
        report["intertwining"] = intertwining;
        rows.add("intertwining_rotation", rotation, 1e-12);
        rows.add("intertwining_generic", generic, 1e-6);
    }

    // the kernel-section checks compare truncated sections against closed-form
    // targets; the degree-(N+1) tail at radius 0.2 only clears the tolerances
    // from twelve retained degrees up
    if (options.degree >= 12) {
        double joint = 0.0, covariance = 0.0, scalar = 0.0, gap = 1e300;
        for (int trial = 0; trial < 3; ++trial) {
            const std::array<Complex, 2> w = {rng.next_disc(0.2), rng.next_disc(0.2)};
            const auto jk = homogeneous::joint_kernel_check(space, w);
            joint = std::max(joint, jk.residual);
            gap = std::min(gap, jk.sigma_second);
            const auto kc = homogeneous::kernel_covariance_check(space, rng.next_transform(0.25), w);
            covariance = std::max(covariance, kc.relative_residual);
            scalar = std::max(scalar, kc.scalar_mismatch);
        }
        rows.add("joint_kernel_residual", joint, 1e-8);
        rows.add_margin("joint_kernel_gap_margin", gap, 0.1);
        rows.add("kernel_covariance", covariance, 1e-6);
        rows.add("kernel_covariance_scalar", scalar, 1e-6);
    }

    SuiteResult out;
    out.rows = rows.take();
    report["schema_version"] = 1;
    report["lambdas"] = options.lambdas;
    report["degree"] = options.degree;
    report["seed"] = options.seed;
    if (options.inject_noise > 0.0) report["inject_noise"] = options.inject_noise;
    report["decomposition"] = decomposition_to_json(dec.report());
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : out.rows) {
        checks.push_back(
            {{"check", r.name}, {"residual", r.residual}, {"tolerance", r.tolerance}, {"pass", r.pass}});
    }
    report["checks"] = checks;
    out.report = std::move(report);
    return out;
}

SuiteResult run_polydisc_suite(const std::array<double, 3>& lambdas, int degree,
                               const std::map<std::string, double>& tolerance_overrides) {
    RowCollector rows(tolerance_overrides);
    const auto result = decompose::polydisc_decompose(lambdas, degree);

    rows.add("polydisc_stage1_gram_diagonality", result.max_gram_offdiag, 1e-10);
    rows.add("polydisc_lambda_sum",
             std::abs(result.lambda_sum_hat - (lambdas[0] + lambdas[1] + lambdas[2])), 1e-3);
    for (std::size_t K = 0; K < result.multiplicities.size(); ++K) {
        rows.add("polydisc_multiplicity_K" + std::to_string(K),
                 std::abs(result.multiplicities[K].second - static_cast<int>(K + 1)), 0.0);
    }

    SuiteResult out;
    out.rows = rows.take();
    out.report = polydisc_to_json(result);
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : out.rows) {
        checks.push_back(
            {{"check", r.name}, {"residual", r.residual}, {"tolerance", r.tolerance}, {"pass", r.pass}});
    }
    out.report["checks"] = checks;
    return out;
}

std::string to_csv(const std::vector<CheckRow>& rows) {
    std::ostringstream os;
    os << "check,residual,tolerance,pass\n";
    os.precision(12);
    for (const auto& r : rows) {
        os << r.name << "," << std::scientific << r.residual << "," << r.tolerance << ","
           << (r.pass ? "true" : "false") << "\n";
    }
    return os.str();
}

nlohmann::json decomposition_to_json(const decompose::DecompositionReport& report) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["lambda_hat"] = report.lambda_hat;
    switch (report.parity) {
        case decompose::Parity::symmetric: j["parity"] = "symmetric"; break;
        case decompose::Parity::antisymmetric: j["parity"] = "antisymmetric"; break;
        default: break;
    }
    nlohmann::json summands = nlohmann::json::array();
    for (const auto& s : report.summands) {
        nlohmann::json e = {{"m", s.m}, {"k00", s.k00}, {"graded_dims", s.graded_dims},
                            {"empty", s.empty}};
        if (s.parameter_ok) e["parameter"] = s.parameter;
        if (s.residual_ok) e["residual"] = s.residual;
        summands.push_back(std::move(e));
    }
    j["summands"] = std::move(summands);
    if (!report.multiplicities.empty()) {
        nlohmann::json mult = nlohmann::json::array();
        for (const auto& [p, c] : report.multiplicities) {
            mult.push_back({{"parameter", p}, {"multiplicity", c}});
        }
        j["multiplicities"] = std::move(mult);
    }
    return j;
}

nlohmann::json polydisc_to_json(const decompose::PolydiscResult& result) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["lambda_hat"] = result.lambda_sum_hat;
    j["max_gram_offdiag"] = result.max_gram_offdiag;
    nlohmann::json mult = nlohmann::json::array();
    for (const auto& [p, c] : result.multiplicities) {
        mult.push_back({{"parameter", p}, {"multiplicity", c}});
    }
    j["multiplicities"] = std::move(mult);
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& stage : result.stages) {
        stages.push_back({{"k3", stage.k3},
                          {"max_gram_offdiag", stage.max_gram_offdiag},
                          {"decomposition", decomposition_to_json(stage.report)}});
    }
    j["stages"] = std::move(stages);
    return j;
}

}  // namespace mobrkhs::verify
