#include "gmsfem/field.hpp"
#include "gmsfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace gmsfem {

namespace {

void fill_rect(BasePermField& f, int i0, int i1, int j0, int j1, double value) {
    i0 = std::max(i0, 0);
    j0 = std::max(j0, 0);
    i1 = std::min(i1, f.nx);
    j1 = std::min(j1, f.nx);
    for (int j = j0; j < j1; ++j)
        for (int i = i0; i < i1; ++i)
            f.values[j * f.nx + i] = value;
}

} // namespace

BasePermField gen_random_inclusions(int nx, std::uint64_t seed, double kappa_max,
                                    double fill_fraction) {
    if (nx <= 0) throw InvalidConfigError("gen_random_inclusions: nx must be positive");
    if (kappa_max < 1.0)
        throw InvalidConfigError("gen_random_inclusions: kappa_max must be >= 1");
    if (fill_fraction < 0.0 || fill_fraction >= 0.3)
        throw InvalidConfigError("gen_random_inclusions: fill_fraction must lie in [0, 0.3)");

    BasePermField f;
    f.nx = nx;
    f.values = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(nx) * nx);
    f.generator = "inclusions";
    f.seed = seed;
    f.kappa_max = kappa_max;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uval(kappa_max / 2.0, kappa_max);
    const int max_block = std::max(2, nx / 25);
    std::uniform_int_distribution<int> usize(1, max_block);
    std::uniform_int_distribution<int> upos(0, nx - 1);

    const auto target = static_cast<long>(fill_fraction * nx * nx);
    long filled = 0;
    int attempts = 0;
    while (filled < target && attempts < 100000) {
        ++attempts;
        const int w = usize(rng), hgt = usize(rng);
        const int i0 = upos(rng), j0 = upos(rng);
        const double v = uval(rng);
        for (int j = j0; j < std::min(j0 + hgt, nx); ++j) {
            for (int i = i0; i < std::min(i0 + w, nx); ++i) {
                double& cell = f.values[j * nx + i];
                if (cell == 1.0) {
                    cell = v;
                    ++filled;
                }
            }
        }
    }
    return f;
}

BasePermField gen_channelized(int nx, double kappa_max) {
    if (nx <= 0) throw InvalidConfigError("gen_channelized: nx must be positive");
    if (kappa_max < 1.0)
        throw InvalidConfigError("gen_channelized: kappa_max must be >= 1");

    BasePermField f;
    f.nx = nx;
    f.values = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(nx) * nx);
    f.generator = "channels";
    f.kappa_max = kappa_max;

    const int w = std::max(2, static_cast<int>(std::lround(0.02 * nx)));
    auto cells = [nx](double frac) { return static_cast<int>(std::lround(frac * nx)); };

    // Long horizontal channel crossing most of the domain.
    fill_rect(f, cells(0.05), cells(0.72), cells(0.28), cells(0.28) + w, kappa_max);
    // L-shaped channel: horizontal run plus a vertical drop at its right end.
    fill_rect(f, cells(0.22), cells(0.90), cells(0.58), cells(0.58) + w, kappa_max);
    fill_rect(f, cells(0.90) - w, cells(0.90), cells(0.20), cells(0.58) + w, kappa_max);
    // Shorter features away from the main channels.
    fill_rect(f, cells(0.35), cells(0.65), cells(0.82), cells(0.82) + w, kappa_max);
    fill_rect(f, cells(0.12), cells(0.12) + w, cells(0.05), cells(0.40), kappa_max);
    return f;
}

BasePermField blend(const BasePermField& k1, const BasePermField& k2, double mu_p) {
    if (k1.nx != k2.nx)
        throw InvalidConfigError("blend: fields live on different grids (nx " +
                                 std::to_string(k1.nx) + " vs " + std::to_string(k2.nx) + ")");
    if (mu_p < 0.0 || mu_p > 1.0)
        throw InvalidConfigError("blend: mu_p must lie in [0, 1]");
    BasePermField out;
    out.nx = k1.nx;
    out.values = mu_p * k1.values + (1.0 - mu_p) * k2.values;
    out.generator = "blend(" + k1.generator + "," + k2.generator + ")";
    out.seed = k1.seed;
    out.kappa_max = std::max(k1.kappa_max, k2.kappa_max);
    return out;
}

Eigen::VectorXd eval_coefficient(const CoefficientModel& model, const Eigen::VectorXd& u_elem) {
    if (u_elem.size() != model.field.values.size())
        throw DomainError("eval_coefficient: state size does not match field");
    Eigen::VectorXd out(u_elem.size());
    const double cap = model.exponent_cap;
    long capped = 0;
    for (Eigen::Index e = 0; e < u_elem.size(); ++e) {
        const double u = u_elem[e];
        if (!std::isfinite(u)) throw DomainError("eval_coefficient: non-finite state value");
        double x = model.field.values[e] * u;
        if (x > cap) { x = cap; ++capped; }
        if (x < -cap) { x = -cap; ++capped; }
        out[e] = std::exp(x);
    }
    if (capped > 0)
        std::cerr << "warning: coefficient exponent capped at " << cap << " on " << capped
                  << " elements; the field scaling is likely off\n";
    return out;
}

Eigen::VectorXd eval_coefficient(const CoefficientModel& model, double u_const) {
    return eval_coefficient(model,
                            Eigen::VectorXd::Constant(model.field.values.size(), u_const));
}

void save_field_text(const BasePermField& field, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("save_field_text: cannot open " + path);
    out.precision(17);
    for (int j = 0; j < field.nx; ++j) {
        for (int i = 0; i < field.nx; ++i) {
            if (i) out << ' ';
            out << field.values[j * field.nx + i];
        }
        out << '\n';
    }
    if (!out) throw IoError("save_field_text: write failed for " + path);
}

BasePermField load_field_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_field_text: cannot open " + path);
    std::vector<double> vals;
    int ncols = -1, nrows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int c = 0;
        double v;
        while (ls >> v) {
            vals.push_back(v);
            ++c;
        }
        if (ncols < 0) ncols = c;
        else if (c != ncols) throw IoError("load_field_text: ragged rows in " + path);
        ++nrows;
    }
    if (nrows == 0 || ncols != nrows)
        throw IoError("load_field_text: expected a square matrix in " + path);
    BasePermField f;
    f.nx = ncols;
    f.values = Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    f.generator = "file";
    f.kappa_max = f.values.maxCoeff();
    return f;
}

} // namespace gmsfem
