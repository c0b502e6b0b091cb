#include "downlink/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace downlink {

using nlohmann::json;

namespace {

json satellite_to_json(const Satellite& s) {
    return json{{"id", s.id},
                {"name", s.name},
                {"a_km", s.semi_major_axis_km},
                {"e", s.eccentricity},
                {"inc_deg", s.inclination_deg},
                {"raan_deg", s.raan_deg},
                {"argp_deg", s.arg_perigee_deg},
                {"m0_deg", s.mean_anomaly_deg}};
}

json station_to_json(const GroundStation& g) {
    return json{{"id", g.id},           {"name", g.name},
                {"lat_deg", g.latitude_deg}, {"lon_deg", g.longitude_deg},
                {"alt_km", g.altitude_km},   {"min_elev_deg", g.min_elevation_deg}};
}

json oid_to_json(const OriginalImageData& t) {
    return json{{"id", t.id},           {"priority", t.priority},
                {"release_s", t.release_s}, {"due_h", t.due_h},
                {"duration_s", t.duration_s}, {"satellite", t.satellite}};
}

json vtw_to_json(const VisibleTimeWindow& v) {
    return json{{"id", v.id}, {"sw", v.sw}, {"ew", v.ew},
                {"satellite", v.satellite}, {"station", v.station}};
}

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ParseError(where + ": field '" + key + "' has wrong type");
    }
}

std::vector<VisibleTimeWindow> vtws_from_json(const json& arr) {
    std::vector<VisibleTimeWindow> out;
    double prev_sw = -1e300;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "vtws[" + std::to_string(i) + "]";
        const json& j = arr[i];
        VisibleTimeWindow v;
        v.id = field<int>(j, "id", where);
        v.sw = field<double>(j, "sw", where);
        v.ew = field<double>(j, "ew", where);
        v.satellite = field<int>(j, "satellite", where);
        v.station = field<int>(j, "station", where);
        if (!(v.sw < v.ew))
            throw ParseError(where + " (id " + std::to_string(v.id) + "): ew <= sw");
        if (v.sw < prev_sw)
            throw ParseError(where + " (id " + std::to_string(v.id) + "): breaks sw ordering");
        prev_sw = v.sw;
        out.push_back(v);
    }
    return out;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
    json j;
    j["version"] = kInstanceFormatVersion;
    j["epoch"] = inst.epoch;
    j["horizon_s"] = inst.horizon_end_s - inst.horizon_start_s;
    j["rp"] = inst.rp;
    j["msid_s"] = inst.msid_s;
    j["sigma_s"] = inst.sigma_s;
    j["satellites"] = json::array();
    for (const auto& s : inst.satellites) j["satellites"].push_back(satellite_to_json(s));
    j["stations"] = json::array();
    for (const auto& g : inst.stations) j["stations"].push_back(station_to_json(g));
    j["oids"] = json::array();
    for (const auto& t : inst.oids) j["oids"].push_back(oid_to_json(t));
    j["vtws"] = json::array();
    for (const auto& v : inst.vtws) j["vtws"].push_back(vtw_to_json(v));
    return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    const int version = field<int>(j, "version", "instance");
    if (version != kInstanceFormatVersion)
        throw ParseError("unsupported instance format version " + std::to_string(version));

    Instance inst;
    inst.epoch = field<std::string>(j, "epoch", "instance");
    inst.horizon_start_s = 0.0;
    inst.horizon_end_s = field<double>(j, "horizon_s", "instance");
    inst.rp = field<double>(j, "rp", "instance");
    inst.msid_s = field<double>(j, "msid_s", "instance");
    inst.sigma_s = field<double>(j, "sigma_s", "instance");

    for (std::size_t i = 0; i < j["satellites"].size(); ++i) {
        const std::string where = "satellites[" + std::to_string(i) + "]";
        const json& s = j["satellites"][i];
        inst.satellites.push_back({field<int>(s, "id", where), field<std::string>(s, "name", where),
                                   field<double>(s, "a_km", where), field<double>(s, "e", where),
                                   field<double>(s, "inc_deg", where), field<double>(s, "raan_deg", where),
                                   field<double>(s, "argp_deg", where), field<double>(s, "m0_deg", where)});
    }
    for (std::size_t i = 0; i < j["stations"].size(); ++i) {
        const std::string where = "stations[" + std::to_string(i) + "]";
        const json& s = j["stations"][i];
        inst.stations.push_back({field<int>(s, "id", where), field<std::string>(s, "name", where),
                                 field<double>(s, "lat_deg", where), field<double>(s, "lon_deg", where),
                                 field<double>(s, "alt_km", where), field<double>(s, "min_elev_deg", where)});
    }
    for (std::size_t i = 0; i < j["oids"].size(); ++i) {
        const std::string where = "oids[" + std::to_string(i) + "]";
        const json& s = j["oids"][i];
        inst.oids.push_back({field<int>(s, "id", where), field<int>(s, "priority", where),
                             field<double>(s, "release_s", where), field<double>(s, "due_h", where),
                             field<double>(s, "duration_s", where), field<int>(s, "satellite", where)});
    }
    inst.vtws = vtws_from_json(j.value("vtws", json::array()));

    try {
        check_instance(inst);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
    write_text_file(path, instance_to_json(inst));
}

Instance load_instance(const std::string& path) {
    return instance_from_json(read_text_file(path));
}

std::vector<VisibleTimeWindow> load_vtws(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("vtws")) throw ParseError("file has no vtws[] block");
    return vtws_from_json(j["vtws"]);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace downlink
