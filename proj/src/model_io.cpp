#include "cylcycles/model_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cylcycles/errors.hpp"

namespace cylcycles {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

nlohmann::json trigpoly_to_json(const TrigPoly& p) {
    return {{"a0", p.a0()}, {"cos", p.cos_coeffs()}, {"sin", p.sin_coeffs()}};
}

TrigPoly trigpoly_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ModelParseError("trig polynomial must be an object");
    double a0 = j.value("a0", 0.0);
    std::vector<double> cc = j.value("cos", std::vector<double>{});
    std::vector<double> ss = j.value("sin", std::vector<double>{});
    return TrigPoly(a0, std::move(cc), std::move(ss));
}

PiecewiseField model_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ModelParseError("model must be a JSON object");
    if (!j.contains("pieces") || !j["pieces"].is_array()) {
        throw ModelParseError("missing \"pieces\" array");
    }
    std::vector<double> thresholds = j.value("thresholds", std::vector<double>{});
    for (std::size_t i = 1; i < thresholds.size(); ++i) {
        if (!(thresholds[i - 1] < thresholds[i])) {
            throw ModelParseError("thresholds must be strictly increasing");
        }
    }
    if (j["pieces"].size() != thresholds.size() + 1) {
        std::ostringstream msg;
        msg << "expected " << thresholds.size() + 1 << " pieces for " << thresholds.size()
            << " thresholds, got " << j["pieces"].size();
        throw ModelParseError(msg.str());
    }

    double scale = 1.0;
    if (j.contains("period")) {
        const double period = j["period"].get<double>();
        if (!(period > 0.0)) throw ModelParseError("period must be positive");
        scale = period / kTwoPi;  // t -> 2*pi*t/T multiplies the RHS by T/(2*pi)
    }

    std::vector<LinearPiece> pieces;
    for (const auto& pj : j["pieces"]) {
        if (!pj.contains("a") || !pj.contains("b")) {
            throw ModelParseError("each piece needs \"a\" and \"b\"");
        }
        pieces.push_back({trigpoly_from_json(pj["a"]) * scale, trigpoly_from_json(pj["b"]) * scale});
    }
    return PiecewiseField(std::move(thresholds), std::move(pieces));
}

PiecewiseField load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ModelParseError(std::string(e.what()));
    }
    return model_from_json(j);
}

nlohmann::json model_to_json(const PiecewiseField& field) {
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto& p : field.pieces()) {
        pieces.push_back({{"a", trigpoly_to_json(p.a)}, {"b", trigpoly_to_json(p.b)}});
    }
    return {{"thresholds", field.thresholds()}, {"pieces", pieces}};
}

nlohmann::json cycle_to_json(const LimitCycle& cycle) {
    return {{"x0", cycle.x0},
            {"times", cycle.times},
            {"sequence", cycle.sequence.canonical_form()},
            {"simple", cycle.simple},
            {"d_prime", cycle.d_prime},
            {"residual_norm", cycle.residual_norm}};
}

nlohmann::json bound_report_to_json(const BoundReport& report) {
    const char* tag = report.formula == BoundFormula::khovanskii  ? "khovanskii"
                      : report.formula == BoundFormula::general ? "general"
                                                                 : "two-region";
    return {{"formula", tag},
            {"value", report.value.get_str()},
            {"factored", report.factored},
            {"order_r", report.profile.order_r},
            {"alpha", report.profile.alpha},
            {"sequence_factor", report.sequence_factor},
            {"inputs", {{"n", report.n}, {"M", report.M}, {"m", report.m}, {"N", report.N}}}};
}

nlohmann::json trajectory_to_json(const PiecewiseField& field, const Trajectory& traj,
                                  std::size_t samples) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : traj.events) {
        events.push_back({{"time", e.time},
                          {"line", e.line_index},
                          {"direction", e.direction == Direction::up ? "up" : "down"},
                          {"transversal", e.transversal}});
    }

    nlohmann::json pts = nlohmann::json::array();
    if (samples >= 2) {
        // Re-evaluate leg by leg from the recorded events.
        int region = field.region_of(traj.x0);
        double leg_t = traj.t0, leg_x = traj.x0;
        std::size_t next_event = 0;
        for (std::size_t i = 0; i < samples; ++i) {
            const double t = traj.t0 + (traj.t1 - traj.t0) * static_cast<double>(i) /
                                           static_cast<double>(samples - 1);
            while (next_event < traj.events.size() && traj.events[next_event].time <= t) {
                const auto& e = traj.events[next_event];
                leg_t = e.time;
                leg_x = field.thresholds()[static_cast<std::size_t>(e.line_index - 1)];
                if (e.transversal) region += e.direction == Direction::up ? 1 : -1;
                ++next_event;
            }
            const auto& piece = field.pieces()[static_cast<std::size_t>(region - 1)];
            pts.push_back({{"t", t}, {"x", advance_in_piece(piece.a, piece.b, leg_t, leg_x, t)}});
        }
    }
    return {{"t0", traj.t0},       {"x0", traj.x0},
            {"t1", traj.t1},       {"x1", traj.x1},
            {"tangency", traj.tangency_flag}, {"events", events},
            {"samples", pts}};
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string& f = fields[i];
        const bool quote = f.find_first_of(",\"\r\n") != std::string::npos;
        if (i) out += ',';
        if (quote) {
            out += '"';
            for (char c : f) {
                out += c;
                if (c == '"') out += '"';
            }
            out += '"';
        } else {
            out += f;
        }
    }
    out += "\r\n";
    return out;
}

}  // namespace cylcycles
