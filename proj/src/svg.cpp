#include "magscan/svg.hpp"
#include "magscan/pool.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace magscan {

FigureData figure_data(std::size_t grid_n, unsigned workers) {
    FigureData d;
    for (int j = 1; j < 200; ++j) d.left_B.push_back(static_cast<double>(j) / 20.0);
    d.left_curves.assign(7, std::vector<double>(d.left_B.size()));
    d.left_envelope.resize(d.left_B.size());
    for (std::size_t i = 0; i < d.left_B.size(); ++i) {
        const double B = d.left_B[i];
        for (int m = 0; m <= 6; ++m) {
            const double v = static_cast<double>(m) - B / 2.0;
            d.left_curves[static_cast<std::size_t>(m)][i] = v * v;
        }
        d.left_envelope[i] = limit_operator_lambda(1.0, B).first;
    }

    for (int j = 1; j < 160; ++j) d.right_B.push_back(static_cast<double>(j) / 20.0);
    d.right_curves.assign(7, std::vector<double>(d.right_B.size()));
    d.right_envelope.assign(d.right_B.size(), 0.0);
    const auto field = RadialFieldSpec::constant(1.0);
    const auto domain = DomainSpec::annulus(1.0, 1.5);
    parallel_for(d.right_B.size(), workers, [&](std::size_t i) {
        const double B = d.right_B[i];
        double env = 1e300;
        for (int m = 0; m <= 6; ++m) {
            const double lam =
                ground_energy(build_fiber(domain, field, m, B, grid_n));
            d.right_curves[static_cast<std::size_t>(m)][i] = lam;
            env = std::min(env, lam);
        }
        d.right_envelope[i] = env;
    });
    return d;
}

namespace {

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

struct Panel {
    double x0, y0, w, h;       // pixel box
    double xmin, xmax, ymin, ymax; // data window
    double X(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
    double Y(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

// Emit a polyline clipped against the panel's y-window (segments crossing the
// top edge are split with interpolated boundary points).
void polyline(std::string& out, const Panel& p, const std::vector<double>& xs,
              const std::vector<double>& ys, const char* style) {
    std::string pts;
    auto flush = [&] {
        if (pts.empty()) return;
        out += "<polyline fill=\"none\" " + std::string(style) + " points=\"" + pts + "\"/>\n";
        pts.clear();
    };
    auto push = [&](double x, double y) {
        if (!pts.empty()) pts += " ";
        pts += px(p.X(x)) + "," + px(p.Y(y));
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const bool in = ys[i] <= p.ymax;
        if (in) {
            if (i > 0 && ys[i - 1] > p.ymax) {
                // entering from above: interpolated crossing
                const double t = (p.ymax - ys[i - 1]) / (ys[i] - ys[i - 1]);
                push(xs[i - 1] + t * (xs[i] - xs[i - 1]), p.ymax);
            }
            push(xs[i], ys[i]);
        } else if (i > 0 && ys[i - 1] <= p.ymax) {
            // leaving upward
            const double t = (p.ymax - ys[i - 1]) / (ys[i] - ys[i - 1]);
            push(xs[i - 1] + t * (xs[i] - xs[i - 1]), p.ymax);
            flush();
        }
    }
    flush();
}

void axes(std::string& out, const Panel& p, int x_tick_step, const char* title) {
    out += "<rect x=\"" + px(p.x0) + "\" y=\"" + px(p.y0) + "\" width=\"" + px(p.w) +
           "\" height=\"" + px(p.h) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int x = 0; x <= static_cast<int>(p.xmax); x += x_tick_step) {
        const double X = p.X(x);
        out += "<line x1=\"" + px(X) + "\" y1=\"" + px(p.y0 + p.h) + "\" x2=\"" + px(X) +
               "\" y2=\"" + px(p.y0 + p.h + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + px(X) + "\" y=\"" + px(p.y0 + p.h + 18) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + std::to_string(x) + "</text>\n";
    }
    for (double y = p.ymin; y <= p.ymax + 1e-9; y += 0.5) {
        const double Y = p.Y(y);
        out += "<line x1=\"" + px(p.x0 - 5) + "\" y1=\"" + px(Y) + "\" x2=\"" + px(p.x0) +
               "\" y2=\"" + px(Y) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + px(p.x0 - 8) + "\" y=\"" + px(Y + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + px(y).substr(0, 3) + "</text>\n";
    }
    out += "<text x=\"" + px(p.x0 + p.w / 2) + "\" y=\"" + px(p.y0 - 8) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + title + "</text>\n";
}

} // namespace

std::string emit_figure(const FigureData& d) {
    if (d.left_B.empty() || d.right_B.empty() || d.left_curves.empty() ||
        d.right_curves.empty())
        throw std::invalid_argument("emit_figure: empty tables");

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1040\" height=\"420\" "
           "viewBox=\"0 0 1040 420\">\n";
    out += "<rect width=\"1040\" height=\"420\" fill=\"white\"/>\n";

    const Panel left{60, 40, 400, 320, 0, 10, 0, 2};
    const Panel right{580, 40, 400, 320, 0, 8, 0, 2};
    axes(out, left, 2, "circle limit: eigenvalues and ground energy");
    axes(out, right, 2, "annulus Ri=1, Ro=3/2: fiber curves and ground energy");

    const char* dotted = "stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"2,3\"";
    const char* solid = "stroke=\"black\" stroke-width=\"2\"";
    for (const auto& curve : d.left_curves) polyline(out, left, d.left_B, curve, dotted);
    polyline(out, left, d.left_B, d.left_envelope, solid);
    for (const auto& curve : d.right_curves) polyline(out, right, d.right_B, curve, dotted);
    polyline(out, right, d.right_B, d.right_envelope, solid);

    out += "</svg>\n";
    return out;
}

} // namespace magscan
