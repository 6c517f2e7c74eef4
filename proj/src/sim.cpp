#include "dsoar/sim.hpp"

#include <cmath>
#include <memory>
#include <span>

#include <Eigen/Dense>

#include "dsoar/integrate.hpp"

namespace dsoar {

namespace {

using ConstVec = Eigen::Map<const Eigen::VectorXd>;
using MutVec = Eigen::Map<Eigen::VectorXd>;

// ---------------------------------------------------------------------------
// Plant runtimes
// ---------------------------------------------------------------------------

struct RowContext {
    double u;         // steered parameter fed to the plant
    double estimate;  // slow part of the steered parameter (no dither)
    double j_clean;
    double j_measured;
};

class PlantRuntime {
  public:
    virtual ~PlantRuntime() = default;
    virtual int state_count() const = 0;
    virtual double objective(double t, std::span<const double> x) const = 0;
    virtual void derivative(double t, std::span<const double> x, double u,
                            std::span<double> dx) const = 0;
    virtual std::vector<std::string> columns() const = 0;
    virtual void row(double t, std::span<const double> x, const RowContext& ctx,
                     std::vector<double>& out) const = 0;
};

class DsPlantRuntime final : public PlantRuntime {
  public:
    explicit DsPlantRuntime(const DynamicSoaringPlant& cfg) : cfg_(cfg) {}

    int state_count() const override { return 6; }

    static FlightState unpack(std::span<const double> x) {
        return {x[0], x[1], x[2], x[3], x[4], x[5]};
    }

    double objective(double t, std::span<const double> x) const override {
        (void)t;
        const FlightState s = unpack(x);
        const EnergyReport er =
            energy_report(s, {0.0, cfg_.lift_coefficient}, cfg_.vehicle, cfg_.wind);
        return cfg_.objective == DsObjective::EnergyGainRate ? er.j1 : er.j2;
    }

    void derivative(double t, std::span<const double> x, double u,
                    std::span<double> dx) const override {
        (void)t;
        const FlightState d =
            dynamics_rhs(unpack(x), {u, cfg_.lift_coefficient}, cfg_.vehicle, cfg_.wind);
        dx[0] = d.x;
        dx[1] = d.y;
        dx[2] = d.z;
        dx[3] = d.v;
        dx[4] = d.gamma;
        dx[5] = d.psi;
    }

    std::vector<std::string> columns() const override {
        return {"t",  "x",          "y",       "z", "V",  "gamma", "psi", "phi", "J_measured",
                "J_clean", "e", "TE", "KE", "PE", "W", "Wdot", "n"};
    }

    void row(double t, std::span<const double> x, const RowContext& ctx,
             std::vector<double>& out) const override {
        const FlightState s = unpack(x);
        const EnergyReport er =
            energy_report(s, {ctx.u, cfg_.lift_coefficient}, cfg_.vehicle, cfg_.wind);
        const double w = wind_speed(cfg_.wind, s.z);
        const double w_dot = wind_time_derivative(cfg_.wind, s.z, s.v * std::sin(s.gamma));
        out = {t,      s.x,   s.y,  s.z,   s.v,   s.gamma, s.psi, ctx.u, ctx.j_measured,
               ctx.j_clean, er.e, er.te, er.ke, er.pe,   w,     w_dot, er.load_factor};
    }

    const DynamicSoaringPlant& config() const { return cfg_; }

  private:
    DynamicSoaringPlant cfg_;
};

class ToyClassicRuntime final : public PlantRuntime {
  public:
    int state_count() const override { return 2; }

    static double quartic(double y) {
        return -std::pow(y, 4) + 8.0 / 15.0 * std::pow(y, 3) + 5.0 / 6.0 * y * y + 10.0;
    }

    double objective(double t, std::span<const double> x) const override {
        (void)t;
        return quartic(4.0 * x[0]);
    }

    void derivative(double t, std::span<const double> x, double theta,
                    std::span<double> dx) const override {
        (void)t;
        const double u = -x[0] - 4.0 * x[1] + theta;
        dx[0] = -x[0] + x[1];
        dx[1] = x[1] + u;
    }

    std::vector<std::string> columns() const override {
        return {"t", "x1", "x2", "theta", "theta_hat", "J_measured", "J_clean"};
    }

    void row(double t, std::span<const double> x, const RowContext& ctx,
             std::vector<double>& out) const override {
        out = {t, x[0], x[1], ctx.u, ctx.estimate, ctx.j_measured, ctx.j_clean};
    }
};

class ToyAugmentedRuntime final : public PlantRuntime {
  public:
    explicit ToyAugmentedRuntime(const ToyAugmentedPlant& cfg)
        : fi_(cfg.input_dynamics), f0_(cfg.output_dynamics) {
        if (!cfg.input_dynamics.is_strictly_proper() || !cfg.output_dynamics.is_strictly_proper())
            throw std::invalid_argument(
                "toy augmented plant: input/output dynamics must be strictly proper");
    }

    int state_count() const override { return fi_.order() + f0_.order(); }

    double theta_effective(std::span<const double> x) const {
        return fi_.output(ConstVec(x.data(), fi_.order()), 0.0);
    }

    double objective(double t, std::span<const double> x) const override {
        (void)t;
        return f0_.output(ConstVec(x.data() + fi_.order(), f0_.order()), 0.0);
    }

    void derivative(double t, std::span<const double> x, double u,
                    std::span<double> dx) const override {
        const double theta = theta_effective(x);
        const double j_map = ToyAugmentedPlant::objective_map(t, theta);
        fi_.derivative(ConstVec(x.data(), fi_.order()), u, MutVec(dx.data(), fi_.order()));
        f0_.derivative(ConstVec(x.data() + fi_.order(), f0_.order()), j_map,
                       MutVec(dx.data() + fi_.order(), f0_.order()));
    }

    std::vector<std::string> columns() const override {
        return {"t", "theta", "theta_star", "J", "J_star", "J_measured", "u_cmd"};
    }

    void row(double t, std::span<const double> x, const RowContext& ctx,
             std::vector<double>& out) const override {
        out = {t,
               theta_effective(x),
               ToyAugmentedPlant::theta_star(t),
               ctx.j_clean,
               ToyAugmentedPlant::j_star(t),
               ctx.j_measured,
               ctx.u};
    }

  private:
    LinearFilter fi_;
    LinearFilter f0_;
};

// ---------------------------------------------------------------------------
// Controller runtimes
// ---------------------------------------------------------------------------

class ControllerRuntime {
  public:
    virtual ~ControllerRuntime() = default;
    virtual int state_count() const = 0;
    virtual void initial_state(double j0, std::span<double> x) const = 0;
    virtual double control(double t, std::span<const double> x, double j_measured) const = 0;
    virtual double estimate(double t, std::span<const double> x, double j_measured) const = 0;
    virtual void derivative(double t, std::span<const double> x, double j_measured,
                            std::span<double> dx) const = 0;
    virtual std::vector<std::string> state_names() const = 0;
};

class OpenLoopRuntime final : public ControllerRuntime {
  public:
    explicit OpenLoopRuntime(const OpenLoopController& cfg) : phi_(cfg.phi) {}
    int state_count() const override { return 0; }
    void initial_state(double, std::span<double>) const override {}
    double control(double, std::span<const double>, double) const override { return phi_; }
    double estimate(double, std::span<const double>, double) const override { return phi_; }
    void derivative(double, std::span<const double>, double, std::span<double>) const override {}
    std::vector<std::string> state_names() const override { return {}; }

  private:
    double phi_;
};

class Esc1Runtime final : public ControllerRuntime {
  public:
    explicit Esc1Runtime(const Esc1Controller& cfg) : cfg_(cfg) { cfg_.params.validate(); }

    int state_count() const override { return 3; }

    void initial_state(double j0, std::span<double> x) const override {
        x[0] = cfg_.theta_hat0;
        x[1] = 0.0;
        x[2] = cfg_.settle_high_pass && cfg_.params.use_high_pass ? j0 : 0.0;
    }

    static EscClassicState unpack(std::span<const double> x) { return {x[0], x[1], x[2]}; }

    double control(double t, std::span<const double> x, double) const override {
        return esc1_control(unpack(x), cfg_.params, t);
    }

    double estimate(double, std::span<const double> x, double) const override { return x[0]; }

    void derivative(double t, std::span<const double> x, double j_measured,
                    std::span<double> dx) const override {
        const EscClassicState d = esc1_rhs(unpack(x), cfg_.params, j_measured, t);
        dx[0] = d.theta_hat;
        dx[1] = d.xi;
        dx[2] = d.eta;
    }

    std::vector<std::string> state_names() const override { return {"theta_hat", "xi", "eta"}; }

  private:
    Esc1Controller cfg_;
};

class Esc2Runtime final : public ControllerRuntime {
  public:
    explicit Esc2Runtime(const Esc2Controller& cfg)
        : loop_(cfg.design), settle_(cfg.settle_block1), explicit_init_(cfg.initial_state) {
        if (!explicit_init_.empty() &&
            explicit_init_.size() != static_cast<std::size_t>(loop_.order()))
            throw std::invalid_argument("esc2: initial_state must have " +
                                        std::to_string(loop_.order()) + " entries");
    }

    int state_count() const override { return loop_.order(); }

    void initial_state(double j0, std::span<double> x) const override {
        if (!explicit_init_.empty()) {
            std::copy(explicit_init_.begin(), explicit_init_.end(), x.begin());
            return;
        }
        std::fill(x.begin(), x.end(), 0.0);
        const int n1 = loop_.block1().order();
        if (settle_ && n1 > 0 && loop_.design().block1.is_hurwitz()) {
            const Eigen::VectorXd eq = loop_.block1().equilibrium_state(j0);
            for (int i = 0; i < n1; ++i) x[static_cast<std::size_t>(i)] = eq(i);
        }
    }

    double control(double t, std::span<const double> x, double j_measured) const override {
        return loop_.control(t, ConstVec(x.data(), x.size()), j_measured);
    }

    double estimate(double t, std::span<const double> x, double j_measured) const override {
        const double dither = loop_.design().a * std::sin(loop_.design().omega * t);
        return loop_.control(t, ConstVec(x.data(), x.size()), j_measured) - dither;
    }

    void derivative(double t, std::span<const double> x, double j_measured,
                    std::span<double> dx) const override {
        Eigen::VectorXd d(loop_.order());
        loop_.derivative(t, ConstVec(x.data(), x.size()), j_measured, d);
        for (int i = 0; i < loop_.order(); ++i) dx[static_cast<std::size_t>(i)] = d(i);
    }

    std::vector<std::string> state_names() const override {
        std::vector<std::string> names;
        for (int i = 0; i < loop_.block1().order(); ++i)
            names.push_back("block1_x" + std::to_string(i));
        for (int i = 0; i < loop_.block2().order(); ++i)
            names.push_back("block2_x" + std::to_string(i));
        return names;
    }

  private:
    Esc2Loop loop_;
    bool settle_;
    std::vector<double> explicit_init_;
};

std::unique_ptr<PlantRuntime> make_plant(const PlantConfig& cfg) {
    return std::visit(
        [](const auto& c) -> std::unique_ptr<PlantRuntime> {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, DynamicSoaringPlant>)
                return std::make_unique<DsPlantRuntime>(c);
            else if constexpr (std::is_same_v<T, ToyClassicPlant>)
                return std::make_unique<ToyClassicRuntime>();
            else
                return std::make_unique<ToyAugmentedRuntime>(c);
        },
        cfg);
}

std::unique_ptr<ControllerRuntime> make_controller(const ControllerConfig& cfg) {
    return std::visit(
        [](const auto& c) -> std::unique_ptr<ControllerRuntime> {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, OpenLoopController>)
                return std::make_unique<OpenLoopRuntime>(c);
            else if constexpr (std::is_same_v<T, Esc1Controller>)
                return std::make_unique<Esc1Runtime>(c);
            else
                return std::make_unique<Esc2Runtime>(c);
        },
        cfg);
}

// Piecewise-constant uniform noise stream. Stateless: the value over hold
// interval k depends only on (seed, k).
class NoiseStream {
  public:
    NoiseStream(const Scenario& sc) {
        if (sc.disturbance && sc.disturbance->relative_amplitude > 0.0) {
            amplitude_ = sc.disturbance->relative_amplitude;
            hold_ = sc.disturbance->hold_interval > 0.0 ? sc.disturbance->hold_interval : sc.dt;
            seed_ = splitmix64(sc.disturbance->seed ^ splitmix64(sc.seed));
        }
    }

    double value_at(double t) const {
        if (amplitude_ == 0.0) return 0.0;
        const auto k = static_cast<std::uint64_t>(std::floor(t / hold_ + 1e-9));
        const std::uint64_t bits = splitmix64(seed_ ^ (k * 0xD1B54A32D192ED03ULL));
        const double unit = static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0,1)
        return amplitude_ * (2.0 * unit - 1.0);
    }

  private:
    double amplitude_ = 0.0;
    double hold_ = 1.0;
    std::uint64_t seed_ = 0;
};

}  // namespace

double ToyAugmentedPlant::theta_star(double t) { return 0.01 * std::exp(0.01 * t); }

double ToyAugmentedPlant::j_star(double t) { return t >= 10.0 ? 0.01 : 0.0; }

double ToyAugmentedPlant::objective_map(double t, double theta) {
    const double err = theta - theta_star(t);
    return j_star(t) + err * err;
}

void Scenario::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("scenario " + name + ": dt must be > 0");
    if (!(duration >= dt))
        throw std::invalid_argument("scenario " + name + ": duration must be >= dt");
    const auto plant_states = make_plant(plant)->state_count();
    if (static_cast<int>(x0.size()) != plant_states)
        throw std::invalid_argument("scenario " + name + ": x0 has " + std::to_string(x0.size()) +
                                    " entries, plant needs " + std::to_string(plant_states));
    if (disturbance) {
        if (!(disturbance->relative_amplitude >= 0.0 && disturbance->relative_amplitude < 1.0))
            throw std::invalid_argument("scenario " + name +
                                        ": disturbance amplitude must be in [0, 1)");
    }
}

RunRecord run(const Scenario& sc) {
    sc.validate();
    const auto plant = make_plant(sc.plant);
    const auto controller = make_controller(sc.controller);
    const std::size_t np = static_cast<std::size_t>(plant->state_count());
    const std::size_t nc = static_cast<std::size_t>(controller->state_count());

    std::vector<double> x(np + nc, 0.0);
    std::copy(sc.x0.begin(), sc.x0.end(), x.begin());
    {
        const double j0 = plant->objective(0.0, std::span<const double>(x.data(), np));
        controller->initial_state(j0, std::span<double>(x.data() + np, nc));
    }

    const NoiseStream noise(sc);
    const auto n_steps = static_cast<long>(std::llround(sc.duration / sc.dt));

    RunRecord record;
    record.scenario_name = sc.name;
    record.columns = plant->columns();
    record.rows.reserve(static_cast<std::size_t>(n_steps) + 1);

    const auto state_names = controller->state_names();
    std::vector<StateExtremum> extrema;
    for (const auto& nm : state_names)
        extrema.push_back({nm, std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity(), 0.0});

    double held_noise = 0.0;
    auto rhs = [&](double t, const std::vector<double>& xs, std::vector<double>& dx) {
        const std::span<const double> xp(xs.data(), np);
        const std::span<const double> xc(xs.data() + np, nc);
        const double j_clean = plant->objective(t, xp);
        const double j_meas = j_clean * (1.0 + held_noise);
        const double u = controller->control(t, xc, j_meas);
        plant->derivative(t, xp, u, std::span<double>(dx.data(), np));
        controller->derivative(t, xc, j_meas, std::span<double>(dx.data() + np, nc));
    };

    auto record_row = [&](double t) {
        const std::span<const double> xp(x.data(), np);
        const std::span<const double> xc(x.data() + np, nc);
        RowContext ctx;
        ctx.j_clean = plant->objective(t, xp);
        ctx.j_measured = ctx.j_clean * (1.0 + held_noise);
        ctx.u = controller->control(t, xc, ctx.j_measured);
        ctx.estimate = controller->estimate(t, xc, ctx.j_measured);
        std::vector<double> row;
        plant->row(t, xp, ctx, row);
        record.rows.push_back(std::move(row));
        for (std::size_t i = 0; i < nc; ++i) {
            extrema[i].min = std::min(extrema[i].min, x[np + i]);
            extrema[i].max = std::max(extrema[i].max, x[np + i]);
            extrema[i].final = x[np + i];
        }
    };

    Rk4Workspace ws;
    for (long i = 0; i < n_steps; ++i) {
        const double t = static_cast<double>(i) * sc.dt;
        held_noise = noise.value_at(t);
        try {
            record_row(t);
            rk4_step(rhs, x, t, sc.dt, ws);
            for (double v : x)
                if (!std::isfinite(v)) throw NonFinite("state became non-finite after t = " +
                                                       std::to_string(t));
        } catch (const SingularState& e) {
            record.summary.aborted = true;
            record.summary.abort_reason = std::string("SingularState: ") + e.what();
            break;
        } catch (const NonFinite& e) {
            record.summary.aborted = true;
            record.summary.abort_reason = std::string("NonFinite: ") + e.what();
            break;
        }
    }
    if (!record.summary.aborted) {
        const double t_final = static_cast<double>(n_steps) * sc.dt;
        held_noise = noise.value_at(t_final);
        try {
            record_row(t_final);
        } catch (const SingularState& e) {
            record.summary.aborted = true;
            record.summary.abort_reason = std::string("SingularState: ") + e.what();
        }
    }

    // Summary, recomputable from the emitted rows.
    auto& summary = record.summary;
    summary.controller_extrema = extrema;
    if (!record.rows.empty()) {
        const auto col = [&](const char* name) {
            for (std::size_t i = 0; i < record.columns.size(); ++i)
                if (record.columns[i] == name) return static_cast<int>(i);
            return -1;
        };
        const int jc = col("J_clean");
        const int jm = jc >= 0 ? jc : col("J");
        summary.objective_initial = record.rows.front()[static_cast<std::size_t>(jm)];
        summary.objective_final = record.rows.back()[static_cast<std::size_t>(jm)];

        const int te_col = col("TE");
        const int e_col = col("e");
        const auto* ds = dynamic_cast<const DsPlantRuntime*>(plant.get());
        if (te_col >= 0 && e_col >= 0 && ds != nullptr) {
            EnergyStats es;
            es.te_initial = record.rows.front()[static_cast<std::size_t>(te_col)];
            es.te_final = record.rows.back()[static_cast<std::size_t>(te_col)];
            es.te_min = es.te_initial;
            es.te_max = es.te_initial;
            for (const auto& r : record.rows) {
                es.te_min = std::min(es.te_min, r[static_cast<std::size_t>(te_col)]);
                es.te_max = std::max(es.te_max, r[static_cast<std::size_t>(te_col)]);
            }
            es.relative_span = (es.te_max - es.te_min) / std::abs(es.te_initial);

            // Energy-rate identity: central differences of e against the
            // analytic rate recomputed per row.
            double num = 0.0, den = 0.0;
            for (std::size_t i = 1; i + 1 < record.rows.size(); ++i) {
                const auto& r = record.rows[i];
                const FlightState s{r[1], r[2], r[3], r[4], r[5], r[6]};
                const EnergyReport er = energy_report(
                    s, {r[7], ds->config().lift_coefficient}, ds->config().vehicle,
                    ds->config().wind);
                const double fd = (record.rows[i + 1][static_cast<std::size_t>(e_col)] -
                                   record.rows[i - 1][static_cast<std::size_t>(e_col)]) /
                                  (2.0 * sc.dt);
                const double diff = fd - er.e_dot_analytic;
                num += diff * diff;
                den += er.e_dot_analytic * er.e_dot_analytic;
            }
            es.rate_identity_rms = den > 0.0 ? std::sqrt(num / den) : 0.0;
            summary.energy = es;
        }
    }
    return record;
}

Scenario matched_still_baseline(const Scenario& sc) {
    const auto* ds = std::get_if<DynamicSoaringPlant>(&sc.plant);
    if (ds == nullptr)
        throw std::invalid_argument("matched_still_baseline: scenario is not a gliding scenario");
    Scenario base = sc;
    base.name = sc.name + "-still-baseline";
    base.description = "still-air open-loop drag baseline for " + sc.name;
    DynamicSoaringPlant plant = *ds;
    plant.wind = StillAir{};
    base.plant = plant;
    base.controller = OpenLoopController{0.0};
    base.disturbance.reset();
    return base;
}

}  // namespace dsoar
