#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fabricphys/clothsim.hpp"
#include "fabricphys/errors.hpp"

namespace fabricphys {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string frame_filename(std::size_t frame) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%04zu.obj", frame);
    return buf;
}

void write_obj_frame(const Trajectory& traj, std::size_t frame, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        raise(ErrorCode::IoError, "cannot write " + path);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "# fabricphys frame %zu t=%.17g s\n", frame, traj.times[frame]);
    out << buf;
    for (const auto& v : traj.frames[frame]) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }
    for (const auto& tri : traj.faces)
        out << "f " << tri[0] + 1 << " " << tri[1] + 1 << " " << tri[2] + 1 << "\n";
}

} // namespace

std::vector<std::string> export_trajectory(const Trajectory& traj, const std::string& out_dir,
                                           TrajectoryFormat format) {
    if (traj.frames.empty())
        raise(ErrorCode::UsageError, "cannot export an empty trajectory");

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        raise(ErrorCode::IoError, "cannot create directory " + out_dir);

    std::vector<std::string> written;
    if (format == TrajectoryFormat::ObjSequence) {
        for (std::size_t f = 0; f < traj.frame_count(); ++f) {
            std::string path = out_dir + "/" + frame_filename(f);
            write_obj_frame(traj, f, path);
            written.push_back(path);
        }
    } else {
        ordered_json doc;
        doc["format"] = "fabricphys-trajectory";
        doc["version"] = 1;
        doc["nx"] = traj.nx;
        doc["ny"] = traj.ny;
        doc["times"] = traj.times;
    ordered_json faces = ordered_json::array();
    for (const auto& tri : traj.faces) faces.push_back({tri[0], tri[1], tri[2]});
    doc["faces"] = std::move(faces);
        ordered_json frames = ordered_json::array();
        for (const auto& frame : traj.frames) {
            ordered_json pts = ordered_json::array();
            for (const auto& v : frame) pts.push_back({v.x, v.y, v.z});
            frames.push_back(std::move(pts));
        }
        doc["frames"] = std::move(frames);
        std::string path = out_dir + "/trajectory.json";
        std::ofstream out(path);
        if (!out)
            raise(ErrorCode::IoError, "cannot write " + path);
        out << doc.dump() << "\n";
        written.push_back(path);
    }
    return written;
}

namespace {

struct ObjData {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
};

ObjData read_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::IoError, "cannot open " + path);
    ObjData data;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) {
            std::istringstream ss(line.substr(2));
            Vec3 v;
            if (!(ss >> v.x >> v.y >> v.z))
                raise(ErrorCode::IoError, "bad vertex line in " + path);
            data.vertices.push_back(v);
        } else if (line.rfind("f ", 0) == 0) {
            std::istringstream ss(line.substr(2));
            std::vector<int> ids;
            std::string token;
            while (ss >> token) {
                // tolerate v/vt/vn references
                ids.push_back(std::stoi(token.substr(0, token.find('/'))));
            }
            if (ids.size() < 3)
                raise(ErrorCode::IoError, "face with fewer than 3 vertices in " + path);
            for (std::size_t i = 1; i + 1 < ids.size(); ++i)
                data.triangles.push_back({ids[0] - 1, ids[i] - 1, ids[i + 1] - 1});
        }
    }
    return data;
}

Trajectory import_obj_sequence(const std::string& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".obj") files.push_back(entry.path());
    if (files.empty())
        raise(ErrorCode::IoError, "no .obj frames in " + dir);
    std::sort(files.begin(), files.end());

    Trajectory traj;
    for (std::size_t f = 0; f < files.size(); ++f) {
        auto data = read_obj(files[f].string());
        if (f > 0 && data.vertices.size() != traj.frames.front().size())
            raise(ErrorCode::IoError, "frame " + std::to_string(f) + " has a different vertex count");
        if (f == 0) traj.faces = std::move(data.triangles);
        traj.frames.push_back(std::move(data.vertices));
        traj.times.push_back(static_cast<double>(f)); // frame index; OBJ stores no clock
    }
    return traj;
}

Trajectory import_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::IoError, "cannot open " + path);
    try {
        auto doc = ordered_json::parse(in);
        if (doc.at("format") != "fabricphys-trajectory")
            raise(ErrorCode::SchemaError, "not a trajectory document");
        Trajectory traj;
        traj.nx = doc.at("nx").get<int>();
        traj.ny = doc.at("ny").get<int>();
        traj.times = doc.at("times").get<std::vector<double>>();
        if (doc.contains("faces"))
            for (const auto& tri : doc.at("faces"))
                traj.faces.push_back({tri.at(0).get<int>(), tri.at(1).get<int>(), tri.at(2).get<int>()});
        for (const auto& frame : doc.at("frames")) {
            std::vector<Vec3> pts;
            for (const auto& p : frame) pts.push_back({p.at(0), p.at(1), p.at(2)});
            traj.frames.push_back(std::move(pts));
        }
        if (traj.times.size() != traj.frames.size())
            raise(ErrorCode::SchemaError, "times and frames disagree");
        return traj;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::SchemaError, std::string("bad trajectory JSON: ") + e.what());
    }
}

} // namespace

Trajectory import_trajectory(const std::string& path_or_dir) {
    if (fs::is_directory(path_or_dir)) return import_obj_sequence(path_or_dir);
    if (path_or_dir.size() >= 4 &&
        path_or_dir.compare(path_or_dir.size() - 4, 4, ".obj") == 0) {
        auto data = read_obj(path_or_dir);
        Trajectory traj;
        traj.faces = std::move(data.triangles);
        traj.frames.push_back(std::move(data.vertices));
        traj.times.push_back(0.0);
        return traj;
    }
    return import_json(path_or_dir);
}

} // namespace fabricphys
