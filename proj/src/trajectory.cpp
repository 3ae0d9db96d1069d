#include "radiance/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace radiance {

namespace {

// Cubic Lagrange interpolation through four equally spaced samples.
double cubic4(double ym1, double y0, double y1, double y2, double s) {
    const double a = y0;
    const double b = (-2.0 * ym1 - 3.0 * y0 + 6.0 * y1 - y2) / 6.0;
    const double c = (ym1 - 2.0 * y0 + y1) / 2.0;
    const double d = (-ym1 + 3.0 * y0 - 3.0 * y1 + y2) / 6.0;
    return a + s * (b + s * (c + s * d));
}

double interp_table(const std::vector<double>& y, double t0, double dt, double t) {
    // Callers guarantee t lies in the interior where i-1 .. i+2 exist.
    const double x = (t - t0) / dt;
    auto i = static_cast<std::ptrdiff_t>(std::floor(x));
    i = std::clamp<std::ptrdiff_t>(i, 1, static_cast<std::ptrdiff_t>(y.size()) - 3);
    const double s = x - static_cast<double>(i);
    return cubic4(y[i - 1], y[i], y[i + 1], y[i + 2], s);
}

}  // namespace

Trajectory::Trajectory(Params p, double c, TimeWindow window)
    : params_(std::move(p)), c_(c), window_(window) {}

Trajectory Trajectory::make_static(double q0, double c) {
    return Trajectory(StaticParams{q0}, c, TimeWindow{});
}

Trajectory Trajectory::uniform_velocity(double q0, double v, double c) {
    if (std::abs(v) >= c)
        throw SuperluminalTrajectory("subluminality violated: uniform velocity |v| >= c");
    return Trajectory(UniformVelocityParams{q0, v}, c, TimeWindow{});
}

Trajectory Trajectory::uniform_acceleration(double alpha, double t_center, double x_vertex,
                                            double c) {
    if (alpha == 0.0)
        throw PhysicsError("uniform acceleration requires alpha != 0 (use Static)");
    // |q'| = c |s| / sqrt(1 + s^2) < c for every finite time: always subluminal.
    return Trajectory(UniformAccelerationParams{alpha, t_center, x_vertex}, c, TimeWindow{});
}

Trajectory Trajectory::sinusoid(double q0, double amplitude, double omega, double phase,
                                double c) {
    if (amplitude < 0.0 || omega <= 0.0)
        throw PhysicsError("sinusoid requires amplitude >= 0 and omega > 0");
    if (amplitude * omega >= c)
        throw SuperluminalTrajectory("subluminality violated: sinusoid peak speed a*omega >= c");
    return Trajectory(SinusoidParams{q0, amplitude, omega, phase}, c, TimeWindow{});
}

Trajectory Trajectory::sampled(double t0, double dt, std::vector<double> values, double c) {
    if (dt <= 0.0 || values.size() < 7)
        throw PhysicsError("sampled trajectory requires dt > 0 and at least 7 samples");
    const auto n = values.size();
    SampledParams sp;
    sp.t0 = t0;
    sp.dt = dt;
    sp.q = std::move(values);
    sp.d1.assign(n, 0.0);
    sp.d2.assign(n, 0.0);
    sp.d3.assign(n, 0.0);
    const auto& q = sp.q;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        sp.d1[i] = (q[i + 1] - q[i - 1]) / (2.0 * dt);
        sp.d2[i] = (q[i + 1] - 2.0 * q[i] + q[i - 1]) / (dt * dt);
        sp.d3[i] = (q[i + 2] - 2.0 * q[i + 1] + 2.0 * q[i - 1] - q[i - 2]) / (2.0 * dt * dt * dt);
    }
    // Edge rows copy their nearest interior neighbour; evaluation never
    // reaches them because the window is shrunk below.
    sp.d1[0] = sp.d1[1] = sp.d1[2];
    sp.d2[0] = sp.d2[1] = sp.d2[2];
    sp.d3[0] = sp.d3[1] = sp.d3[2];
    sp.d1[n - 1] = sp.d1[n - 2] = sp.d1[n - 3];
    sp.d2[n - 1] = sp.d2[n - 2] = sp.d2[n - 3];
    sp.d3[n - 1] = sp.d3[n - 2] = sp.d3[n - 3];

    double vmax = 0.0, qmin = q[0], qmax = q[0];
    for (std::size_t i = 2; i + 2 < n; ++i) {
        vmax = std::max(vmax, std::abs(sp.d1[i]));
        qmin = std::min(qmin, q[i]);
        qmax = std::max(qmax, q[i]);
    }
    sp.vmax = vmax;
    sp.amp = 0.5 * (qmax - qmin);
    if (vmax >= c)
        throw SuperluminalTrajectory("subluminality violated: sampled trajectory reaches |q'| >= c");

    // Compare the h and 2h third-derivative stencils at interior points.
    double noise = 0.0, scale = 0.0;
    for (std::size_t i = 4; i + 4 < n; ++i) {
        const double j2h =
            (q[i + 4] - 2.0 * q[i + 2] + 2.0 * q[i - 2] - q[i - 4]) / (16.0 * dt * dt * dt);
        noise = std::max(noise, std::abs(sp.d3[i] - j2h));
        scale = std::max(scale, std::abs(sp.d3[i]));
    }
    sp.jerk_noise = scale > 0.0 ? noise / scale : 0.0;

    const TimeWindow w{t0 + 2.0 * dt, t0 + static_cast<double>(n - 3) * dt};
    return Trajectory(std::move(sp), c, w);
}

TrajectoryKind Trajectory::kind() const {
    return static_cast<TrajectoryKind>(params_.index());
}

Kinematics Trajectory::kinematics(double t) const {
    Kinematics k;
    if (const auto* s = std::get_if<StaticParams>(&params_)) {
        k.q = s->q0;
    } else if (const auto* uv = std::get_if<UniformVelocityParams>(&params_)) {
        k.q = uv->q0 + uv->v * t;
        k.v = uv->v;
    } else if (const auto* ua = std::get_if<UniformAccelerationParams>(&params_)) {
        const double s = ua->alpha * (t - ua->t_center) / c_;
        const double r = std::sqrt(1.0 + s * s);
        k.q = ua->x_vertex + c_ * c_ / ua->alpha * (r - 1.0);
        k.v = c_ * s / r;
        k.a = ua->alpha / (r * r * r);
        k.j = -3.0 * ua->alpha * ua->alpha * s / (c_ * r * r * r * r * r);
    } else if (const auto* sn = std::get_if<SinusoidParams>(&params_)) {
        const double ph = sn->omega * t + sn->phase;
        const double sp = std::sin(ph), cp = std::cos(ph);
        const double w = sn->omega;
        k.q = sn->q0 + sn->a * sp;
        k.v = sn->a * w * cp;
        k.a = -sn->a * w * w * sp;
        k.j = -sn->a * w * w * w * cp;
    } else {
        const auto& sd = std::get<SampledParams>(params_);
        if (!window_.contains(t))
            throw NoConvergence("sampled trajectory evaluated outside its window");
        k.q = interp_table(sd.q, sd.t0, sd.dt, t);
        k.v = interp_table(sd.d1, sd.t0, sd.dt, t);
        k.a = interp_table(sd.d2, sd.t0, sd.dt, t);
        k.j = interp_table(sd.d3, sd.t0, sd.dt, t);
    }
    return k;
}

double Trajectory::position(double t) const { return kinematics(t).q; }
double Trajectory::velocity(double t) const { return kinematics(t).v; }
double Trajectory::acceleration(double t) const { return kinematics(t).a; }
double Trajectory::jerk(double t) const { return kinematics(t).j; }

double Trajectory::peak_velocity() const {
    if (const auto* uv = std::get_if<UniformVelocityParams>(&params_))
        return std::abs(uv->v);
    if (std::get_if<UniformAccelerationParams>(&params_))
        return c_;  // approached asymptotically, never reached
    if (const auto* sn = std::get_if<SinusoidParams>(&params_))
        return sn->a * sn->omega;
    if (const auto* sd = std::get_if<SampledParams>(&params_))
        return sd->vmax;
    return 0.0;
}

double Trajectory::displacement_amplitude() const {
    if (const auto* sn = std::get_if<SinusoidParams>(&params_))
        return sn->a;
    if (const auto* sd = std::get_if<SampledParams>(&params_))
        return sd->amp;
    return 0.0;  // Static; unbounded kinds handled by their callers
}

double Trajectory::mean_position() const {
    if (const auto* s = std::get_if<StaticParams>(&params_))
        return s->q0;
    if (const auto* sn = std::get_if<SinusoidParams>(&params_))
        return sn->q0;
    if (const auto* sd = std::get_if<SampledParams>(&params_)) {
        double sum = 0.0;
        for (const double q : sd->q)
            sum += q;
        return sum / static_cast<double>(sd->q.size());
    }
    return position(0.0);
}

Trajectory Trajectory::negated() const {
    if (const auto* s = std::get_if<StaticParams>(&params_))
        return make_static(-s->q0, c_);
    if (const auto* uv = std::get_if<UniformVelocityParams>(&params_))
        return uniform_velocity(-uv->q0, -uv->v, c_);
    if (const auto* ua = std::get_if<UniformAccelerationParams>(&params_))
        return uniform_acceleration(-ua->alpha, ua->t_center, -ua->x_vertex, c_);
    if (const auto* sn = std::get_if<SinusoidParams>(&params_))
        return sinusoid(-sn->q0, sn->a, sn->omega, sn->phase + std::numbers::pi, c_);
    const auto& sd = std::get<SampledParams>(params_);
    std::vector<double> neg(sd.q.size());
    std::transform(sd.q.begin(), sd.q.end(), neg.begin(), [](double x) { return -x; });
    return sampled(sd.t0, sd.dt, std::move(neg), c_);
}

double Trajectory::jerk_noise_estimate() const {
    if (const auto* sd = std::get_if<SampledParams>(&params_))
        return sd->jerk_noise;
    return 0.0;
}

std::string Trajectory::describe() const {
    std::ostringstream out;
    if (const auto* s = std::get_if<StaticParams>(&params_)) {
        out << "static(q0=" << s->q0 << ")";
    } else if (const auto* uv = std::get_if<UniformVelocityParams>(&params_)) {
        out << "uniform-velocity(q0=" << uv->q0 << ", v=" << uv->v << ")";
    } else if (const auto* ua = std::get_if<UniformAccelerationParams>(&params_)) {
        out << "uniform-acceleration(alpha=" << ua->alpha << ", t_center=" << ua->t_center
            << ", x_vertex=" << ua->x_vertex << ")";
    } else if (const auto* sn = std::get_if<SinusoidParams>(&params_)) {
        out << "sinusoid(q0=" << sn->q0 << ", a=" << sn->a << ", omega=" << sn->omega
            << ", phase=" << sn->phase << ")";
    } else {
        const auto& sd = std::get<SampledParams>(params_);
        out << "sampled(n=" << sd.q.size() << ", t0=" << sd.t0 << ", dt=" << sd.dt << ")";
    }
    return out.str();
}

}  // namespace radiance
