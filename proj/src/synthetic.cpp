#include "latentiv/synthetic.hpp"

#include "latentiv/report.hpp"

#include <fstream>

namespace latentiv {

namespace {

void check_size(Eigen::Index n)
{
    if (n < 1) throw Error(ErrorKind::TooFewSamples, "sample size must be positive");
}

double bern(RngStream& rng, double p) { return rng.bernoulli(p) ? 1.0 : 0.0; }

int bit(double v) { return v != 0.0 ? 1 : 0; }

void write_column(const Vector& v, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    for (Eigen::Index i = 0; i < v.size(); ++i) out << format_real(v[i]) << '\n';
}

}  // namespace

std::string_view to_string(Scenario scenario)
{
    return scenario == Scenario::Chain ? "chain" : "confounded";
}

std::string_view to_string(Setting setting)
{
    return setting == Setting::DiscreteBinary ? "discrete" : "continuous";
}

Scenario parse_scenario(std::string_view name)
{
    if (name == "chain") return Scenario::Chain;
    if (name == "confounded") return Scenario::Confounded;
    throw Error(ErrorKind::InvalidConfig, "unknown scenario '" + std::string(name) + "'");
}

Setting parse_setting(std::string_view name)
{
    if (name == "discrete") return Setting::DiscreteBinary;
    if (name == "continuous") return Setting::ContinuousGaussian;
    throw Error(ErrorKind::InvalidConfig, "unknown setting '" + std::string(name) + "'");
}

void BinaryCpts::validate() const
{
    auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
    bool valid = ok(p_ix) && ok(p_u);
    for (double p : p_x_given_ix) valid = valid && ok(p);
    for (double p : p_y_given_x) valid = valid && ok(p);
    for (double p : p_y_given_u) valid = valid && ok(p);
    for (const auto& row : p_x_given_ix_u)
        for (double p : row) valid = valid && ok(p);
    for (const auto& row : p_iy_given_xy)
        for (double p : row) valid = valid && ok(p);
    if (!valid) throw Error(ErrorKind::InvalidCpt, "conditional probability outside [0, 1]");
}

SyntheticSample generate_chain_continuous(Eigen::Index n, const ScmParams& p, RngStream& rng)
{
    check_size(n);
    SyntheticSample s;
    s.scenario = Scenario::Chain;
    s.setting = Setting::ContinuousGaussian;
    s.x.resize(n);
    s.y.resize(n);
    s.i_x.resize(n);
    s.i_y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        s.i_x[i] = p.sigma_i * rng.normal();
        s.x[i] = p.alpha0 + p.alpha * s.i_x[i] + p.sigma_x * rng.normal();
        s.y[i] = p.beta0 + p.beta * s.x[i] + p.sigma_y * rng.normal();
        s.i_y[i] = s.x[i] + s.y[i] + p.sigma_i * rng.normal();
    }
    return s;
}

SyntheticSample generate_confounded_continuous(Eigen::Index n, const ScmParams& p, RngStream& rng)
{
    check_size(n);
    SyntheticSample s;
    s.scenario = Scenario::Confounded;
    s.setting = Setting::ContinuousGaussian;
    s.x.resize(n);
    s.y.resize(n);
    s.i_x.resize(n);
    s.i_y.resize(n);
    Vector u(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        u[i] = p.sigma_u * rng.normal();
        s.i_x[i] = p.sigma_i * rng.normal();
        s.x[i] = p.alpha0 + p.alpha * s.i_x[i] + p.delta * u[i] + p.sigma_x * rng.normal();
        s.y[i] = p.beta0 + p.gamma * u[i] + p.sigma_y * rng.normal();
        s.i_y[i] = s.x[i] + s.y[i] + p.sigma_i * rng.normal();
    }
    s.u = std::move(u);
    return s;
}

SyntheticSample generate_chain_discrete(Eigen::Index n, const ScmParams& p, RngStream& rng)
{
    check_size(n);
    p.cpts.validate();
    const BinaryCpts& t = p.cpts;
    SyntheticSample s;
    s.scenario = Scenario::Chain;
    s.setting = Setting::DiscreteBinary;
    s.x.resize(n);
    s.y.resize(n);
    s.i_x.resize(n);
    s.i_y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        s.i_x[i] = bern(rng, t.p_ix);
        s.x[i] = bern(rng, t.p_x_given_ix[bit(s.i_x[i])]);
        s.y[i] = bern(rng, t.p_y_given_x[bit(s.x[i])]);
        s.i_y[i] = bern(rng, t.p_iy_given_xy[bit(s.x[i])][bit(s.y[i])]);
    }
    return s;
}

SyntheticSample generate_confounded_discrete(Eigen::Index n, const ScmParams& p, RngStream& rng)
{
    check_size(n);
    p.cpts.validate();
    const BinaryCpts& t = p.cpts;
    SyntheticSample s;
    s.scenario = Scenario::Confounded;
    s.setting = Setting::DiscreteBinary;
    s.x.resize(n);
    s.y.resize(n);
    s.i_x.resize(n);
    s.i_y.resize(n);
    Vector u(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        u[i] = bern(rng, t.p_u);
        s.i_x[i] = bern(rng, t.p_ix);
        s.x[i] = bern(rng, t.p_x_given_ix_u[bit(s.i_x[i])][bit(u[i])]);
        s.y[i] = bern(rng, t.p_y_given_u[bit(u[i])]);
        s.i_y[i] = bern(rng, t.p_iy_given_xy[bit(s.x[i])][bit(s.y[i])]);
    }
    s.u = std::move(u);
    return s;
}

SyntheticSample generate(Scenario scenario, Setting setting, Eigen::Index n, const ScmParams& params,
                         RngStream& rng)
{
    if (setting == Setting::ContinuousGaussian) {
        return scenario == Scenario::Chain ? generate_chain_continuous(n, params, rng)
                                           : generate_confounded_continuous(n, params, rng);
    }
    return scenario == Scenario::Chain ? generate_chain_discrete(n, params, rng)
                                       : generate_confounded_discrete(n, params, rng);
}

std::vector<std::filesystem::path> write_sample(const SyntheticSample& s, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    const auto data_path = dir / "data.txt";
    {
        std::ofstream out(data_path);
        if (!out) throw Error(ErrorKind::Io, "cannot write " + data_path.string());
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            out << format_real(s.x[i]) << ' ' << format_real(s.y[i]) << '\n';
        }
    }
    written.push_back(data_path);
    write_column(s.i_x, dir / "i_x.txt");
    written.push_back(dir / "i_x.txt");
    write_column(s.i_y, dir / "i_y.txt");
    written.push_back(dir / "i_y.txt");
    if (s.u) {
        write_column(*s.u, dir / "u.txt");
        written.push_back(dir / "u.txt");
    }
    return written;
}

}  // namespace latentiv
