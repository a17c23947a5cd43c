#include "ilt/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace ilt::io {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_for_write(const std::filesystem::path& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

std::string trim(std::string s) {
    const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

double parse_double(const std::string& token, const std::string& where) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw ParseError(where + ": '" + token + "' is not a number");
    return v;
}

std::uint64_t parse_unsigned(const std::string& token, const std::string& where) {
    std::uint64_t v = 0;
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), last, v);
    if (ec != std::errc() || ptr != last) throw ParseError(where + ": '" + token + "' is not a non-negative integer");
    return v;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------- text grids

std::vector<std::vector<std::string>> tokenize_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        rows.push_back(std::move(tokens));
    }
    return rows;
}

template <class ParseValue>
RealGrid parse_text_grid(const std::string& text, const std::string& origin, ParseValue parse_value) {
    const auto rows = tokenize_rows(text);
    std::vector<double> data;
    std::size_t width = 0, height = 0;
    for (std::size_t line = 0; line < rows.size(); ++line) {
        const auto& tokens = rows[line];
        if (tokens.empty()) continue;
        if (height == 0) width = tokens.size();
        if (tokens.size() != width) {
            std::ostringstream msg;
            msg << origin << ":" << line + 1 << ": row has " << tokens.size() << " columns, expected " << width;
            throw ParseError(msg.str());
        }
        for (std::size_t col = 0; col < tokens.size(); ++col) {
            std::ostringstream where;
            where << origin << ":" << line + 1 << ":" << col + 1;
            data.push_back(parse_value(tokens[col], where.str()));
        }
        ++height;
    }
    if (height == 0) throw ParseError(origin + ": empty grid");
    if (height != width) {
        std::ostringstream msg;
        msg << origin << ": non-square grid (" << height << " rows x " << width << " columns)";
        throw ParseError(msg.str());
    }
    return RealGrid(width, std::move(data));
}

// ---------------------------------------------------------------- PGM

struct PgmImage {
    std::size_t width = 0, height = 0;
    unsigned maxval = 0;
    std::vector<unsigned> pixels;
};

PgmImage parse_pgm(const std::string& bytes, const std::string& origin) {
    std::size_t pos = 0;
    auto skip_space_and_comments = [&] {
        while (pos < bytes.size()) {
            const unsigned char ch = static_cast<unsigned char>(bytes[pos]);
            if (ch == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(ch)) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_header_int = [&](const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos;
        while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) ++pos;
        if (start == pos) throw ParseError(origin + ": PGM header is missing " + what);
        return static_cast<std::size_t>(parse_unsigned(bytes.substr(start, pos - start), origin));
    };

    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        throw ParseError(origin + ": not a P2/P5 PGM file");
    const bool ascii = bytes[1] == '2';
    pos = 2;
    PgmImage img;
    img.width = read_header_int("width");
    img.height = read_header_int("height");
    const std::size_t maxval = read_header_int("maxval");
    if (maxval == 0 || maxval > 65535) throw ParseError(origin + ": PGM maxval out of range");
    img.maxval = static_cast<unsigned>(maxval);
    const std::size_t count = img.width * img.height;
    img.pixels.reserve(count);

    if (ascii) {
        for (std::size_t i = 0; i < count; ++i) {
            skip_space_and_comments();
            const std::size_t start = pos;
            while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) ++pos;
            if (start == pos) {
                std::ostringstream msg;
                msg << origin << ": PGM pixel " << i << " (row " << i / std::max<std::size_t>(img.width, 1) + 1
                    << ", column " << i % std::max<std::size_t>(img.width, 1) + 1 << ") missing or malformed";
                throw ParseError(msg.str());
            }
            img.pixels.push_back(static_cast<unsigned>(parse_unsigned(bytes.substr(start, pos - start), origin)));
        }
    } else {
        ++pos;  // single whitespace after maxval
        const std::size_t bpp = img.maxval > 255 ? 2 : 1;
        if (bytes.size() < pos + count * bpp) throw ParseError(origin + ": PGM pixel data truncated");
        for (std::size_t i = 0; i < count; ++i) {
            const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + pos + i * bpp);
            img.pixels.push_back(bpp == 1 ? p[0] : (static_cast<unsigned>(p[0]) << 8) | p[1]);
        }
    }
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        if (img.pixels[i] > img.maxval) throw ParseError(origin + ": PGM pixel exceeds maxval");
    if (img.width != img.height) {
        std::ostringstream msg;
        msg << origin << ": non-square image (" << img.height << " rows x " << img.width << " columns)";
        throw ParseError(msg.str());
    }
    if (img.width == 0) throw ParseError(origin + ": empty image");
    return img;
}

bool looks_like_pgm(const std::string& bytes) {
    return bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5');
}

void write_pgm(const std::filesystem::path& path, std::size_t n, const std::vector<unsigned char>& pixels,
               const std::string& comment) {
    auto out = open_for_write(path, true);
    out << "P5\n";
    if (!comment.empty()) out << "# " << comment << "\n";
    out << n << ' ' << n << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

BinaryPattern parse_pattern_text(const std::string& text, const std::string& origin) {
    return BinaryPattern(parse_text_grid(text, origin, [](const std::string& tok, const std::string& where) {
        if (tok == "0") return 0.0;
        if (tok == "1") return 1.0;
        throw ParseError(where + ": token '" + tok + "' is not 0 or 1");
    }));
}

BinaryPattern load_pattern(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    const std::string origin = path.string();
    if (!looks_like_pgm(bytes)) return parse_pattern_text(bytes, origin);
    const PgmImage img = parse_pgm(bytes, origin);
    RealGrid grid(img.width);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        grid[i] = 2.0 * static_cast<double>(img.pixels[i]) >= static_cast<double>(img.maxval) ? 1.0 : 0.0;
    return BinaryPattern(std::move(grid));
}

RealGrid load_grid_text(const std::filesystem::path& path) {
    return parse_text_grid(read_file(path), path.string(),
                           [](const std::string& tok, const std::string& where) { return parse_double(tok, where); });
}

RealGrid load_mask(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    if (!looks_like_pgm(bytes)) return load_grid_text(path);
    const PgmImage img = parse_pgm(bytes, path.string());
    RealGrid grid(img.width);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        grid[i] = static_cast<double>(img.pixels[i]) / static_cast<double>(img.maxval);
    return grid;
}

SaveMode parse_save_mode(const std::string& name) {
    if (name == "binary") return SaveMode::Binary;
    if (name == "continuous") return SaveMode::Continuous;
    if (name == "text") return SaveMode::Text;
    throw std::invalid_argument("unknown save mode '" + name + "' (expected binary, continuous or text)");
}

void save_grid(const RealGrid& grid, const std::filesystem::path& path, SaveMode mode) {
    const std::size_t n = grid.side();
    switch (mode) {
        case SaveMode::Binary: {
            std::vector<unsigned char> px(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) px[i] = grid[i] >= 0.5 ? 255 : 0;
            write_pgm(path, n, px, "binary: value >= 0.5 -> 255");
            break;
        }
        case SaveMode::Continuous: {
            const auto [lo_it, hi_it] = std::minmax_element(grid.begin(), grid.end());
            const double lo = *lo_it, hi = *hi_it;
            std::vector<unsigned char> px(grid.size(), 0);
            if (hi > lo)
                for (std::size_t i = 0; i < grid.size(); ++i)
                    px[i] = static_cast<unsigned char>(std::lround(255.0 * (grid[i] - lo) / (hi - lo)));
            write_pgm(path, n, px, "continuous: 0 -> " + format_double(lo) + ", 255 -> " + format_double(hi));
            break;
        }
        case SaveMode::Text: {
            auto out = open_for_write(path);
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t c = 0; c < n; ++c) out << (c ? " " : "") << format_double(grid(r, c));
                out << '\n';
            }
            if (!out) throw IoError("failed writing '" + path.string() + "'");
            break;
        }
    }
}

void write_history(const std::vector<ConvergenceRecord>& records, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << kHistoryHeader << '\n';
    for (const auto& r : records)
        out << r.iteration << ',' << format_double(r.lagrangian) << ',' << format_double(r.epe_error) << ','
            << format_double(r.primal_residual) << ',' << (r.step_accepted ? 1 : 0) << '\n';
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<ConvergenceRecord> read_history(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || trim(line) != kHistoryHeader)
        throw ParseError(path.string() + ": missing history header");
    std::vector<ConvergenceRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(trim(f));
        const std::string where = path.string() + ":" + std::to_string(lineno);
        if (fields.size() != 5) throw ParseError(where + ": expected 5 fields");
        ConvergenceRecord r;
        r.iteration = static_cast<std::size_t>(parse_unsigned(fields[0], where));
        r.lagrangian = parse_double(fields[1], where);
        r.epe_error = parse_double(fields[2], where);
        r.primal_residual = parse_double(fields[3], where);
        r.step_accepted = parse_unsigned(fields[4], where) != 0;
        records.push_back(r);
    }
    return records;
}

void RunConfig::validate() const {
    optics.validate();
    solver.validate();
}

std::map<std::string, std::string> parse_key_values(const std::string& text, const std::string& origin) {
    std::map<std::string, std::string> values;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(origin + ":" + std::to_string(lineno) + ": empty key");
        values[key] = value;
    }
    return values;
}

void apply_key_values(RunConfig& cfg, const std::map<std::string, std::string>& values) {
    for (const auto& [key, value] : values) {
        const std::string where = "config key '" + key + "'";
        auto real = [&] { return parse_double(value, where); };
        auto count = [&] { return static_cast<std::size_t>(parse_unsigned(value, where)); };
        if (key == "wavelength_nm") cfg.optics.wavelength_nm = real();
        else if (key == "numerical_aperture") cfg.optics.numerical_aperture = real();
        else if (key == "defocus_nm") cfg.optics.defocus_nm = real();
        else if (key == "pixel_size_nm") cfg.optics.pixel_size_nm = real();
        else if (key == "kernel_size") cfg.optics.kernel_size = count();
        else if (key == "sigmoid_steepness") cfg.optics.sigmoid_steepness = real();
        else if (key == "threshold") cfg.optics.threshold = real();
        else if (key == "rho") cfg.solver.rho = real();
        else if (key == "gamma") cfg.solver.gamma = real();
        else if (key == "beta1") cfg.solver.beta1 = real();
        else if (key == "beta2") cfg.solver.beta2 = real();
        else if (key == "armijo_alpha") cfg.solver.armijo_alpha = real();
        else if (key == "armijo_beta") cfg.solver.armijo_beta = real();
        else if (key == "armijo_t0") cfg.solver.armijo_t0 = real();
        else if (key == "outer_tol") cfg.solver.outer_tol = real();
        else if (key == "outer_max_iters") cfg.solver.outer_max_iters = count();
        else if (key == "bregman_max_iters") cfg.solver.bregman_max_iters = count();
        else if (key == "bregman_tol") cfg.solver.bregman_tol = real();
        else if (key == "descent_max_iters") cfg.solver.descent_max_iters = count();
        else if (key == "input_path") cfg.input_path = value;
        else if (key == "output_dir") cfg.output_dir = value;
        else if (key == "seed") cfg.seed = parse_unsigned(value, where);
        else throw ParseError("unknown config key '" + key + "'");
    }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    apply_key_values(cfg, parse_key_values(read_file(path), path.string()));
}

std::string to_key_values(const RunConfig& cfg) {
    std::ostringstream out;
    const auto& o = cfg.optics;
    const auto& s = cfg.solver;
    out << "wavelength_nm=" << format_double(o.wavelength_nm) << '\n'
        << "numerical_aperture=" << format_double(o.numerical_aperture) << '\n'
        << "defocus_nm=" << format_double(o.defocus_nm) << '\n'
        << "pixel_size_nm=" << format_double(o.pixel_size_nm) << '\n'
        << "kernel_size=" << o.kernel_size << '\n'
        << "sigmoid_steepness=" << format_double(o.sigmoid_steepness) << '\n'
        << "threshold=" << format_double(o.threshold) << '\n'
        << "rho=" << format_double(s.rho) << '\n'
        << "gamma=" << format_double(s.gamma) << '\n'
        << "beta1=" << format_double(s.beta1) << '\n'
        << "beta2=" << format_double(s.beta2) << '\n'
        << "armijo_alpha=" << format_double(s.armijo_alpha) << '\n'
        << "armijo_beta=" << format_double(s.armijo_beta) << '\n'
        << "armijo_t0=" << format_double(s.armijo_t0) << '\n'
        << "outer_tol=" << format_double(s.outer_tol) << '\n'
        << "outer_max_iters=" << s.outer_max_iters << '\n'
        << "bregman_max_iters=" << s.bregman_max_iters << '\n'
        << "bregman_tol=" << format_double(s.bregman_tol) << '\n'
        << "descent_max_iters=" << s.descent_max_iters << '\n'
        << "input_path=" << cfg.input_path.string() << '\n'
        << "output_dir=" << cfg.output_dir.string() << '\n'
        << "seed=" << cfg.seed << '\n';
    return out.str();
}

}  // namespace ilt::io
