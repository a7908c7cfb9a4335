// SPDX-License-Identifier: Apache-2.0
//
// elaagen - near-field fading channel generator for extremely large aperture arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "elaa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/rayleigh.hpp>

#include "elaa/engine.hpp"
#include "elaa/errors.hpp"
#include "elaa/fading.hpp"
#include "elaa/io.hpp"

namespace elaa
{

namespace
{

// Two-sided KS statistic of samples against a continuous CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)> &cdf)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const double f = cdf(samples[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

// Asymptotic Kolmogorov critical value at alpha = 0.01.
double ks_critical_01(std::size_t n) { return 1.62762 / std::sqrt(static_cast<double>(n)); }

struct Chi2Result
{
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

// Pearson chi-squared of observed counts against expected counts; buckets
// with expected < 5 are merged into their successor.
Chi2Result chi2_gof(const std::vector<double> &observed, const std::vector<double> &expected)
{
    std::vector<double> obs_m, exp_m;
    double o_acc = 0.0, e_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i)
    {
        o_acc += observed[i];
        e_acc += expected[i];
        if (e_acc >= 5.0)
        {
            obs_m.push_back(o_acc);
            exp_m.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 && !exp_m.empty())
    {
        obs_m.back() += o_acc;
        exp_m.back() += e_acc;
    }

    Chi2Result r;
    if (exp_m.size() < 2)
        return r;
    for (std::size_t i = 0; i < exp_m.size(); ++i)
    {
        const double diff = obs_m[i] - exp_m[i];
        r.statistic += diff * diff / exp_m[i];
    }
    r.dof = exp_m.size() - 1;
    boost::math::chi_squared dist(static_cast<double>(r.dof));
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

// Amplitude CDF of the unit-power Rician fading coefficient at fixed K:
// |g|^2 * 2(K+1) is noncentral chi-squared with 2 dof and lambda = 2K.
double rician_amplitude_cdf(double x, double k_linear)
{
    if (x <= 0.0)
        return 0.0;
    boost::math::non_central_chi_squared dist(2.0, 2.0 * k_linear);
    return boost::math::cdf(dist, 2.0 * (k_linear + 1.0) * x * x);
}

// Complete (non-edge-truncated) run lengths of the boundary process.
std::vector<std::size_t> sample_run_lengths(std::size_t n_draws, double spacing, double d_corr,
                                            RngStream stream)
{
    const auto breaks = generate_horizontal_breaks(n_draws + 1, spacing, d_corr, stream);
    std::vector<std::size_t> runs;
    runs.reserve(breaks.size() + 1);
    std::size_t prev = 0;
    for (const std::size_t b : breaks)
    {
        runs.push_back(b - prev);
        prev = b;
    }
    return runs; // the final (truncated) run is dropped
}

} // namespace

std::string run_stats(const SimulationConfig &config, std::size_t n_trials, const std::string &out_dir)
{
    if (n_trials < 1)
        throw config_error("stats: trials must be at least 1");

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw io_error("cannot create output directory '" + out_dir + "': " + ec.message());

    const auto open = [&](const std::string &name) {
        std::ofstream out((fs::path(out_dir) / name).string());
        if (!out)
            throw io_error("cannot open '" + name + "' for writing");
        out.precision(10);
        return out;
    };

    std::ostringstream summary;
    summary.precision(6);
    RngStream root(config.seed);
    const ScenarioProfile &profile = config.profile;
    const double spacing = config.array.spacing();

    // --- Window-length distribution vs the analytic PMF -------------------
    {
        const auto runs =
            sample_run_lengths(n_trials, spacing, config.windows.d_corr_h_m, root.child(0x10));
        const std::size_t max_len = 64;
        const auto pmf = window_length_pmf(config.windows.d_corr_h_m, spacing, max_len);

        std::vector<double> observed(max_len, 0.0);
        double mean = 0.0;
        for (const std::size_t L : runs)
        {
            observed[std::min(L, max_len) - 1] += 1.0;
            mean += static_cast<double>(L);
        }
        mean /= std::max<std::size_t>(runs.size(), 1);

        std::vector<double> expected(max_len);
        for (std::size_t i = 0; i < max_len; ++i)
            expected[i] = pmf[i] * static_cast<double>(runs.size());
        const Chi2Result chi2 = chi2_gof(observed, expected);

        auto out = open("window_length_pmf.csv");
        out << "length,count,empirical_pmf,analytic_pmf\n";
        for (std::size_t i = 0; i < max_len; ++i)
            out << (i + 1) << ',' << observed[i] << ','
                << observed[i] / std::max<double>(1.0, static_cast<double>(runs.size())) << ',' << pmf[i]
                << '\n';

        const double p = break_probability(spacing, config.windows.d_corr_h_m);
        summary << "window lengths: n_runs=" << runs.size() << " empirical_mean=" << mean
                << " analytic_mean=" << 1.0 / p << " chi2=" << chi2.statistic << " dof=" << chi2.dof
                << " p_value=" << chi2.p_value << (chi2.p_value > 0.01 ? " [ok]" : " [LOW]") << '\n';
    }

    // --- Mean window length across correlation distances ------------------
    {
        auto out = open("window_mean_length.csv");
        out << "d_corr_m,break_prob,analytic_mean,empirical_mean\n";
        const double base = config.windows.d_corr_h_m;
        std::size_t probe = 0;
        for (const double scale : {0.5, 1.0, 2.0, 4.0, 8.0})
        {
            const double d_corr = base * scale;
            const auto runs = sample_run_lengths(n_trials, spacing, d_corr, root.child(0x20).child(probe++));
            double mean = 0.0;
            for (const std::size_t L : runs)
                mean += static_cast<double>(L);
            mean /= std::max<std::size_t>(runs.size(), 1);
            const double p = break_probability(spacing, d_corr);
            out << d_corr << ',' << p << ',' << 1.0 / p << ',' << mean << '\n';
        }
        summary << "window mean-length sweep written (5 correlation distances)\n";
    }

    // --- LoS fraction vs distance ------------------------------------------
    {
        auto out = open("los_fraction.csv");
        out << "d2_m,analytic_p,empirical_fraction,n_windows,ci95_halfwidth\n";
        const ArrayGeometry probe_array(1, 1, spacing, {}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0});
        std::size_t probe = 0;
        for (const double d2 : {18.0, 36.0, 72.0})
        {
            const MtGeometry mt({Point3{0.0, -d2, 0.0}});
            const double analytic = los_probability(profile, d2);
            std::size_t hits = 0;
            const RngStream base = root.child(0x30).child(probe++);
            for (std::size_t t = 0; t < n_trials; ++t)
            {
                WindowPartition part = generate_partition(probe_array, config.windows, t, base.child(t));
                assign_states(part, profile, probe_array, mt, base.child(t));
                hits += part.windows[0].state == LinkState::los ? 1 : 0;
            }
            const double frac = static_cast<double>(hits) / static_cast<double>(n_trials);
            const double ci =
                1.96 * std::sqrt(std::max(frac * (1.0 - frac), 1e-12) / static_cast<double>(n_trials));
            out << d2 << ',' << analytic << ',' << frac << ',' << n_trials << ',' << ci << '\n';
            summary << "LoS fraction at d2=" << d2 << ": empirical=" << frac << " +- " << ci
                    << " analytic=" << analytic << '\n';
        }
    }

    // --- Fading distribution checks ----------------------------------------
    {
        auto out = open("fading_tests.csv");
        out << "test,n_samples,ks_statistic,ks_critical_alpha01,mean_power,pass\n";
        const double lambda = profile.wavelength();
        const double crit = ks_critical_01(n_trials);

        const auto report = [&](const std::string &name, double ks, double mean_power) {
            const bool pass = ks < crit;
            out << name << ',' << n_trials << ',' << ks << ',' << crit << ',' << mean_power << ','
                << (pass ? 1 : 0) << '\n';
            summary << "fading " << name << ": ks=" << ks << " crit=" << crit
                    << " mean_power=" << mean_power << (pass ? " [ok]" : " [FAIL]") << '\n';
        };

        {
            RngStream s = root.child(0x40);
            std::vector<double> amp(n_trials);
            double power = 0.0;
            for (auto &a : amp)
            {
                const auto g = draw_small_scale(LinkState::nlos, 0.0, 10.0, lambda, s);
                a = std::abs(g);
                power += std::norm(g);
            }
            boost::math::rayleigh ref(1.0 / std::sqrt(2.0));
            report("nlos_rayleigh_amplitude",
                   ks_statistic(std::move(amp), [&](double x) { return boost::math::cdf(ref, x); }),
                   power / static_cast<double>(n_trials));
        }
        {
            constexpr double k_linear = 1.0;
            RngStream s = root.child(0x41);
            std::vector<double> amp(n_trials);
            double power = 0.0;
            for (auto &a : amp)
            {
                const auto g = draw_small_scale(LinkState::los, k_linear, 10.0, lambda, s);
                a = std::abs(g);
                power += std::norm(g);
            }
            report("los_rician_amplitude_k1",
                   ks_statistic(std::move(amp), [&](double x) { return rician_amplitude_cdf(x, k_linear); }),
                   power / static_cast<double>(n_trials));
        }
        {
            // Shadow fading over an all-NLoS partition.
            const ArrayGeometry row(1, std::min<std::size_t>(n_trials, 4096), spacing, {}, {1.0, 0.0, 0.0},
                                    {0.0, 0.0, 1.0});
            ScenarioProfile nlos_profile = profile;
            nlos_profile.los_prob.model = LosProbabilityParams::Model::constant;
            nlos_profile.los_prob.constant_p = 0.0;
            const MtGeometry mt({Point3{0.0, -50.0, 1.5}});

            std::vector<double> sf;
            sf.reserve(n_trials);
            const RngStream base = root.child(0x42);
            std::size_t trial = 0;
            while (sf.size() < n_trials)
            {
                WindowPartition part = generate_partition(row, config.windows, trial, base.child(trial));
                assign_states(part, nlos_profile, row, mt, base.child(trial));
                const ShadowMap map = draw_shadow(part, nlos_profile, base.child(trial));
                for (const double v : map.window_sf_db)
                {
                    sf.push_back(v);
                    if (sf.size() == n_trials)
                        break;
                }
                ++trial;
            }
            boost::math::normal ref(0.0, profile.sf_sigma_nlos_db);
            double mean_sq = 0.0;
            for (const double v : sf)
                mean_sq += v * v;
            mean_sq /= static_cast<double>(sf.size());
            report("shadow_normal_db",
                   ks_statistic(std::move(sf), [&](double x) { return boost::math::cdf(ref, x); }),
                   mean_sq / (profile.sf_sigma_nlos_db * profile.sf_sigma_nlos_db));
        }
    }

    // --- Blockage mask vs the analytic sphere oracle ------------------------
    {
        const std::size_t n_scenes = std::clamp<std::size_t>(n_trials / 100, 10, 500);
        // Wall array in the x-z plane; its outward normal is -y, so MTs and
        // spheres live at negative y.
        const ArrayGeometry array(32, 64, 0.05, {}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0});
        RngStream scene_base = root.child(0x50);

        std::size_t n_links = 0, n_disagree = 0;
        for (std::size_t scene = 0; scene < n_scenes; ++scene)
        {
            RngStream s = scene_base.child(scene);
            const Point3 mt_pos{0.4 + 2.4 * s.uniform01(), -(8.0 + 6.0 * s.uniform01()),
                                0.2 + 1.2 * s.uniform01()};
            const double radius = 0.15 + 0.55 * s.uniform01();
            const Point3 sphere_center{0.2 + 2.8 * s.uniform01(), -(0.7 + radius + 4.5 * s.uniform01()),
                                       0.1 + 1.4 * s.uniform01()};

            const MtGeometry mt({mt_pos});
            const SensingObject cloud = make_sphere_cloud(sphere_center, radius, 2000, s.child(1));
            const std::vector<LinkState> pre(array.n_elements(), LinkState::los);
            const BlockageMask mask = blockage_mask(std::span(&cloud, 1), mt, array, pre);

            for (std::size_t m = 0; m < array.n_elements(); ++m)
            {
                const bool oracle = oracle_ray_sphere(array.element_position(m), mt.reference_point(),
                                                      sphere_center, radius);
                n_links += 1;
                n_disagree += (oracle != mask.at(m)) ? 1 : 0;
            }
        }
        const double agreement =
            1.0 - static_cast<double>(n_disagree) / std::max<std::size_t>(n_links, 1);

        auto out = open("blockage_agreement.csv");
        out << "n_scenes,n_links,n_disagreements,agreement_rate\n";
        out << n_scenes << ',' << n_links << ',' << n_disagree << ',' << agreement << '\n';
        summary << "blockage agreement: scenes=" << n_scenes << " links=" << n_links
                << " rate=" << agreement << (agreement >= 0.999 ? " [ok]" : " [LOW]") << '\n';
    }

    const std::string text = summary.str();
    auto out = open("summary.txt");
    out << text;
    return text;
}

} // namespace elaa
