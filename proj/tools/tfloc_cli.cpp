// Command-line front end for the time-frequency localization toolkit:
// Hilbert-Schmidt norms, spectra, deficit sweeps, spectrograms, and the
// hyperbolic wavelet analogue. CSV goes to files or stdout; every command
// also prints a versioned JSON summary.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "tfloc/deficit.hpp"
#include "tfloc/hs.hpp"
#include "tfloc/hyperbolic.hpp"
#include "tfloc/spectral.hpp"
#include "tfloc/stft.hpp"

using json = nlohmann::json;
using namespace tfloc;

namespace {

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw input_error("expected a comma-separated list");
    return out;
}

// "lo:hi:n" -> n log-spaced values.
std::vector<double> parse_range(const std::string& text) {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1 ||
        !(lo > 0.0) || !(hi > lo))
        throw input_error("expected a range lo:hi:count with 0 < lo < hi");
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(n == 1 ? lo
                             : lo * std::pow(hi / lo, i / double(n - 1)));
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw input_error("cannot open output file " + path);
    return os;
}

void write_csv(std::ostream& os, const SweepResult& sweep) {
    os << "param,measure,hs_sq,hs_sq_star,deficit,alpha,beta,"
          "empirical_constant\n";
    char line[256];
    for (const SweepPoint& p : sweep.points) {
        std::snprintf(line, sizeof(line),
                      "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      p.param, p.report.omega_measure, p.report.hs_sq,
                      p.report.hs_sq_star, p.report.deficit, p.report.alpha,
                      p.report.beta_value, p.report.empirical_constant);
        os << line;
    }
}

json report_json(const DeficitReport& r) {
    return {{"omega_measure", r.omega_measure},
            {"hs_sq", r.hs_sq},
            {"hs_sq_star", r.hs_sq_star},
            {"deficit", r.deficit},
            {"alpha", r.alpha},
            {"beta", r.beta_value},
            {"empirical_constant", r.empirical_constant},
            {"alpha_analytic", r.alpha_analytic}};
}

struct Options {
    std::string region_file;
    std::string out_file;
    double ball = 0.0;
    int d = 1;
    double h = 0.05;
};

int run(CLI::App& app, int argc, char** argv) {
    // `--h` is a spec'd cell-size flag, so the help flag is long-form only.
    app.set_help_flag("--help", "print help and exit");
    app.set_help_all_flag("--help-all", "print help for all subcommands");
    // ---- hs ----------------------------------------------------------
    auto* hs_cmd = app.add_subcommand(
        "hs", "Hilbert-Schmidt norm of a localization operator");
    auto opt = std::make_shared<Options>();
    auto method = std::make_shared<std::string>("direct");
    hs_cmd->add_option("--ball", opt->ball, "ball radius (radial route)");
    hs_cmd->add_option("--d", opt->d, "half-dimension d (phase space R^{2d})")
        ->check(CLI::Range(1, 4));
    hs_cmd->add_option("--region", opt->region_file,
                       "RGN1 region file (grid route)");
    hs_cmd->add_option("--method", *method,
                       "grid method: direct|convolution|cell-exact")
        ->check(CLI::IsMember({"direct", "convolution", "cell-exact"}));
    hs_cmd->callback([opt, method] {
        HSResult res;
        if (opt->ball > 0.0) {
            res = hs_norm_sq_radial(
                RadialRegion(2 * opt->d, {{0.0, opt->ball}}));
        } else if (!opt->region_file.empty()) {
            const GridField f =
                indicator_field(read_region(opt->region_file));
            if (*method == "cell-exact")
                res = hs_norm_sq_cells_exact(f);
            else
                res = hs_norm_sq_grid(f, *method == "direct"
                                             ? HSMethod::grid_direct
                                             : HSMethod::grid_convolution);
        } else {
            throw input_error("hs: give --ball R or --region FILE");
        }
        json out = {{"schema", 1},
                    {"hs_sq", res.hs_sq},
                    {"method", to_string(res.method)},
                    {"resolution", res.resolution},
                    {"estimated_error", res.estimated_error}};
        std::cout << out.dump(2) << "\n";
    });

    // ---- region ------------------------------------------------------
    auto* region_cmd =
        app.add_subcommand("region", "rasterize balls into an RGN1 file");
    auto balls_text = std::make_shared<std::string>();
    auto ropt = std::make_shared<Options>();
    auto margin = std::make_shared<double>(3.3);
    region_cmd
        ->add_option("--balls", *balls_text,
                     "semicolon-separated x,y,r triples")
        ->required();
    region_cmd->add_option("--h", ropt->h, "cell size")->check(CLI::PositiveNumber);
    region_cmd->add_option("--margin", *margin, "grid margin");
    region_cmd->add_option("--out", ropt->out_file, "output file")->required();
    region_cmd->callback([balls_text, ropt, margin] {
        std::vector<Ball> balls;
        std::stringstream ss(*balls_text);
        std::string triple;
        while (std::getline(ss, triple, ';')) {
            const std::vector<double> v = parse_list(triple);
            if (v.size() != 3)
                throw input_error("region: each ball needs x,y,r");
            balls.push_back({{v[0], v[1]}, v[2]});
        }
        const GridSpec spec = make_grid_covering(balls, ropt->h, *margin);
        write_region(rasterize(balls, spec), ropt->out_file);
        json out = {{"schema", 1},
                    {"file", ropt->out_file},
                    {"nx", spec.nx},
                    {"ny", spec.ny},
                    {"h", spec.h}};
        std::cout << out.dump(2) << "\n";
    });

    // ---- deficit -----------------------------------------------------
    auto* def_cmd = app.add_subcommand(
        "deficit", "rearrangement deficit of a single region");
    auto dopt = std::make_shared<Options>();
    def_cmd->add_option("--ball", dopt->ball, "ball radius (radial)");
    def_cmd->add_option("--region", dopt->region_file, "RGN1 region file");
    def_cmd->add_option("--d", dopt->d, "half-dimension")->check(CLI::Range(1, 4));
    def_cmd->callback([dopt] {
        DeficitReport rep;
        if (dopt->ball > 0.0)
            rep = deficit_report(
                RadialRegion(2 * dopt->d, {{0.0, dopt->ball}}));
        else if (!dopt->region_file.empty())
            rep = deficit_report(read_region(dopt->region_file));
        else
            throw input_error("deficit: give --ball R or --region FILE");
        json out = report_json(rep);
        out["schema"] = 1;
        std::cout << out.dump(2) << "\n";
    });

    // ---- sweep -------------------------------------------------------
    auto* sweep_cmd =
        app.add_subcommand("sweep", "deficit sweep over a family");
    auto family = std::make_shared<std::string>();
    auto eps_range = std::make_shared<std::string>("0.02:0.2:8");
    auto r_list = std::make_shared<std::string>();
    auto sopt = std::make_shared<Options>();
    auto conj_b = std::make_shared<double>(0.5);
    auto conj_delta = std::make_shared<double>(0.5);
    auto seed = std::make_shared<unsigned>(42);
    sweep_cmd->add_option("--family", *family, "eps|dilate|dumbbell|conj2")
        ->required();
    sweep_cmd->add_option("--eps", *eps_range, "eps range lo:hi:count");
    sweep_cmd->add_option("--r", *r_list, "comma-separated radii");
    sweep_cmd->add_option("--d", sopt->d, "half-dimension")->check(CLI::Range(1, 4));
    sweep_cmd->add_option("--b", *conj_b, "window radius (conj2)");
    sweep_cmd->add_option("--delta", *conj_delta, "margin parameter (conj2)");
    sweep_cmd->add_option("--seed", *seed, "random seed (conj2 corpus)");
    sweep_cmd->add_option("--out", sopt->out_file, "CSV output path");
    sweep_cmd->callback([family, eps_range, r_list, sopt, conj_b, conj_delta,
                         seed] {
        if (*family == "conj2") {
            std::mt19937 rng(*seed);
            std::uniform_real_distribution<double> ulen(0.4, 1.2),
                ugap(1.0, 6.0);
            std::ostringstream csv;
            csv << "index,length,alpha,lhs_deficit,rhs_scale,ratio\n";
            double min_ratio = 1e300;
            for (int i = 0; i < 50; ++i) {
                const double l1 = ulen(rng), l2 = ulen(rng), g = ugap(rng);
                const Conjecture2Report rep = conjecture2_probe(
                    {{0.0, l1}, {l1 + g, l1 + g + l2}}, *conj_b, *conj_delta);
                char line[192];
                std::snprintf(line, sizeof(line),
                              "%d,%.12g,%.12g,%.12g,%.12g,%.12g\n", i,
                              rep.length, rep.alpha, rep.lhs_deficit,
                              rep.rhs_scale, rep.ratio);
                csv << line;
                min_ratio = std::min(min_ratio, rep.ratio);
            }
            if (!sopt->out_file.empty())
                open_out(sopt->out_file) << csv.str();
            else
                std::cout << csv.str();
            json out = {{"schema", 1},
                        {"family", "conj2"},
                        {"count", 50},
                        {"min_ratio", min_ratio}};
            std::cout << out.dump(2) << "\n";
            return;
        }
        SweepResult sweep;
        if (*family == "eps") {
            sweep = sweep_eps(parse_range(*eps_range), sopt->d);
        } else if (*family == "dilate") {
            sweep = sweep_dilate(r_list->empty() ? parse_range("0.005:0.02:8")
                                                 : parse_list(*r_list));
        } else if (*family == "dumbbell") {
            sweep = sweep_dumbbell(r_list->empty()
                                       ? std::vector<double>{2, 3, 4, 6}
                                       : parse_list(*r_list));
        } else {
            throw input_error("sweep: unknown family " + *family);
        }
        if (!sopt->out_file.empty()) {
            auto os = open_out(sopt->out_file);
            write_csv(os, sweep);
        } else {
            write_csv(std::cout, sweep);
        }
        json out = {{"schema", 1},
                    {"family", *family},
                    {"slope", sweep.fit.slope},
                    {"intercept", sweep.fit.intercept},
                    {"residual", sweep.fit.residual}};
        std::cout << out.dump(2) << "\n";
    });

    // ---- spectrum ----------------------------------------------------
    auto* spec_cmd =
        app.add_subcommand("spectrum", "eigenvalues of a localization operator");
    auto popt = std::make_shared<Options>();
    spec_cmd->add_option("--ball", popt->ball, "disc radius");
    spec_cmd->add_option("--region", popt->region_file, "RGN1 region file");
    spec_cmd->add_option("--h", popt->h, "cell size for --ball")
        ->check(CLI::PositiveNumber);
    spec_cmd->add_option("--out", popt->out_file, "CSV output path");
    spec_cmd->callback([popt] {
        GridRegion reg;
        if (popt->ball > 0.0) {
            const GridSpec spec = make_grid_covering(
                {{{0.0, 0.0}, popt->ball}}, popt->h, 2.0 * popt->h);
            reg = rasterize(RadialRegion(2, {{0.0, popt->ball}}), spec);
        } else if (!popt->region_file.empty()) {
            reg = read_region(popt->region_file);
        } else {
            throw input_error("spectrum: give --ball R or --region FILE");
        }
        const SpectralResult res = analyze_region(reg);
        std::ostringstream csv;
        csv << "index,eigenvalue\n";
        for (std::size_t i = 0; i < res.eigenvalues.size(); ++i) {
            char line[64];
            std::snprintf(line, sizeof(line), "%zu,%.12g\n", i,
                          res.eigenvalues[i]);
            csv << line;
        }
        if (!popt->out_file.empty())
            open_out(popt->out_file) << csv.str();
        else
            std::cout << csv.str();
        json out = {{"schema", 1},
                    {"cells", res.eigenvalues.size()},
                    {"omega_measure", res.omega_measure},
                    {"trace", res.schatten.s1},
                    {"lambda_max", res.schatten.sinf},
                    {"schatten_2", res.schatten.s2},
                    {"schatten_4", res.schatten.s4}};
        std::cout << out.dump(2) << "\n";
    });

    // ---- stft --------------------------------------------------------
    auto* stft_cmd = app.add_subcommand("stft", "spectrogram demos and checks");
    auto demo = std::make_shared<std::string>("gaussian");
    auto lieb_p = std::make_shared<double>(0.0);
    auto stft_seed = std::make_shared<unsigned>(42);
    auto topt = std::make_shared<Options>();
    stft_cmd->add_option("--demo", *demo, "gaussian|hermite|random")
        ->check(CLI::IsMember({"gaussian", "hermite", "random"}));
    stft_cmd->add_option("--lieb", *lieb_p, "check the L^p bound, p in [2,8]");
    stft_cmd->add_option("--seed", *stft_seed, "seed for --demo random");
    stft_cmd->add_option("--h", topt->h, "phase-space cell size")
        ->check(CLI::PositiveNumber);
    stft_cmd->add_option("--out", topt->out_file, "CSV output (x,omega,value)");
    stft_cmd->callback([demo, lieb_p, stft_seed, topt] {
        Signal f;
        if (*demo == "gaussian")
            f = sample_gaussian_window();
        else if (*demo == "hermite")
            f = sample_hermite(2);
        else
            f = random_hermite_combination(*stft_seed);
        const GridSpec spec = default_phase_grid(6.0, topt->h);
        const GridField v = stft_gaussian(f, spec);
        double mass = 0.0;
        for (auto& val : v.values) mass += std::norm(val);
        mass *= spec.h * spec.h;
        json out = {{"schema", 1},
                    {"demo", *demo},
                    {"signal_norm_sq", f.norm2_sq()},
                    {"spectrogram_mass", mass}};
        if (*lieb_p > 0.0) {
            const LiebReport rep = lieb_check(f, v, *lieb_p);
            out["lieb"] = {{"p", *lieb_p},
                           {"lhs", rep.lhs},
                           {"rhs", rep.rhs},
                           {"slack", rep.slack}};
        }
        if (!topt->out_file.empty()) {
            auto os = open_out(topt->out_file);
            os << "x,omega,value\n";
            for (int iy = 0; iy < spec.ny; ++iy)
                for (int ix = 0; ix < spec.nx; ++ix) {
                    const Vec2 z = spec.center(ix, iy);
                    char line[96];
                    std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g\n",
                                  z.x, z.y,
                                  std::norm(v.values[spec.index(ix, iy)]));
                    os << line;
                }
        }
        std::cout << out.dump(2) << "\n";
    });

    // ---- hyper -------------------------------------------------------
    auto* hyp_cmd =
        app.add_subcommand("hyper", "hyperbolic wavelet kernel and balls");
    auto hbeta = std::make_shared<double>(1.0);
    auto hball = std::make_shared<double>(0.0);
    auto kernel_flag = std::make_shared<bool>(false);
    auto hopt = std::make_shared<Options>();
    hyp_cmd->add_flag("--kernel", *kernel_flag, "tabulate rho(t)");
    hyp_cmd->add_option("--beta", *hbeta, "Cauchy wavelet order")
        ->check(CLI::PositiveNumber);
    hyp_cmd->add_option("--ball", *hball, "hyperbolic ball radius");
    hyp_cmd->add_option("--out", hopt->out_file, "CSV output path");
    hyp_cmd->callback([hbeta, hball, kernel_flag, hopt] {
        json out = {{"schema", 1}, {"beta", *hbeta}};
        if (*kernel_flag) {
            std::ostringstream csv;
            csv << "t,rho\n";
            for (int i = 0; i <= 100; ++i) {
                const double t = 0.1 * i;
                char line[64];
                std::snprintf(line, sizeof(line), "%.12g,%.12g\n", t,
                              cauchy_kernel(t, *hbeta));
                csv << line;
            }
            if (!hopt->out_file.empty())
                open_out(hopt->out_file) << csv.str();
            else
                std::cout << csv.str();
            out["rho_at_0"] = cauchy_kernel(0.0, *hbeta);
        }
        if (*hball > 0.0) {
            const HypBall ball = hyp_ball(*hball);
            out["ball"] = {{"R", ball.R},
                           {"euclid_center_s", ball.euclid_center.y},
                           {"euclid_radius", ball.euclid_radius},
                           {"nu_measure", ball.nu_measure},
                           {"nu_closed", hyp_ball_nu_closed(*hball)}};
        }
        if (!*kernel_flag && !(*hball > 0.0))
            throw input_error("hyper: give --kernel and/or --ball R");
        std::cout << out.dump(2) << "\n";
    });

    app.require_subcommand(1);
    app.parse(argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-frequency localization toolkit"};
    try {
        return run(app, argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const fit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
