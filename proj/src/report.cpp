#include "pupil/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace pupil {

namespace {

std::string printf_format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

std::string format_coord(double v) { return printf_format("%.2f", v); }
std::string format_ratio(double v) { return printf_format("%.4f", v); }
std::string format_dmax(double v) { return printf_format("%.3f", v); }

std::string records_csv(const std::vector<EvalRecord>& records, bool timing) {
    std::string out = "image_id,algo,lx,ly,rx,ry,d,status";
    if (timing)
        out += ",left_ms,right_ms";
    out += '\n';
    for (const EvalRecord& rec : records) {
        out += rec.image_id;
        out += ',';
        out += algorithm_name(rec.algorithm);
        out += ',';
        if (rec.predicted_left)
            out += format_coord(rec.predicted_left->x) + ',' +
                   format_coord(rec.predicted_left->y);
        else
            out += ",";
        out += ',';
        if (rec.predicted_right)
            out += format_coord(rec.predicted_right->x) + ',' +
                   format_coord(rec.predicted_right->y);
        else
            out += ",";
        out += ',';
        if (rec.d)
            out += format_ratio(*rec.d);
        out += ',';
        out += record_status_label(rec.status);
        if (timing) {
            out += ',';
            if (rec.left_ms)
                out += printf_format("%.3f", *rec.left_ms);
            out += ',';
            if (rec.right_ms)
                out += printf_format("%.3f", *rec.right_ms);
        }
        out += '\n';
    }
    return out;
}

std::string summary_csv(const std::vector<EfficiencyCurve>& curves) {
    std::string out = "algo,dmax,efficiency,evaluated\n";
    for (const EfficiencyCurve& curve : curves)
        for (const auto& [dmax, eff] : curve.points) {
            out += algorithm_name(curve.algorithm);
            out += ',' + format_dmax(dmax) + ',' + format_ratio(eff) + ',' +
                   std::to_string(curve.evaluated_count) + '\n';
        }
    return out;
}

std::string curve_csv(const std::vector<EfficiencyCurve>& curves) {
    std::string out = "algo,dmax,efficiency\n";
    for (const EfficiencyCurve& curve : curves)
        for (const auto& [dmax, eff] : curve.points) {
            out += algorithm_name(curve.algorithm);
            out += ',' + format_dmax(dmax) + ',' + format_ratio(eff) + '\n';
        }
    return out;
}

namespace {

nlohmann::ordered_json opt_number(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json record_to_json(const EvalRecord& rec, bool timing) {
    nlohmann::ordered_json j;
    j["image_id"] = rec.image_id;
    j["algo"] = algorithm_name(rec.algorithm);
    if (rec.predicted_left) {
        j["lx"] = rec.predicted_left->x;
        j["ly"] = rec.predicted_left->y;
    } else {
        j["lx"] = nullptr;
        j["ly"] = nullptr;
    }
    if (rec.predicted_right) {
        j["rx"] = rec.predicted_right->x;
        j["ry"] = rec.predicted_right->y;
    } else {
        j["rx"] = nullptr;
        j["ry"] = nullptr;
    }
    j["d"] = opt_number(rec.d);
    j["status"] = record_status_label(rec.status);
    if (timing) {
        j["left_ms"] = opt_number(rec.left_ms);
        j["right_ms"] = opt_number(rec.right_ms);
    }
    return j;
}

}  // namespace

std::string records_json(const std::vector<EvalRecord>& records, bool timing) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const EvalRecord& rec : records)
        arr.push_back(record_to_json(rec, timing));
    return arr.dump(2) + "\n";
}

std::string summary_json(const std::vector<EfficiencyCurve>& curves) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const EfficiencyCurve& curve : curves)
        for (const auto& [dmax, eff] : curve.points) {
            nlohmann::ordered_json j;
            j["algo"] = algorithm_name(curve.algorithm);
            j["dmax"] = dmax;
            j["efficiency"] = eff;
            j["evaluated"] = curve.evaluated_count;
            arr.push_back(std::move(j));
        }
    return arr.dump(2) + "\n";
}

std::string curve_json(const std::vector<EfficiencyCurve>& curves) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const EfficiencyCurve& curve : curves)
        for (const auto& [dmax, eff] : curve.points) {
            nlohmann::ordered_json j;
            j["algo"] = algorithm_name(curve.algorithm);
            j["dmax"] = dmax;
            j["efficiency"] = eff;
            arr.push_back(std::move(j));
        }
    return arr.dump(2) + "\n";
}

}  // namespace pupil
