#include "fidbound/cli/cli.hpp"
#include "fidbound/states.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

namespace fidbound::cli {

namespace {

[[noreturn]] void parse_error(const std::string &what) { throw ValidationError(ErrorKind::Parse, what); }

std::complex<double> parse_entry(const Json &entry) {
    if (entry.is_number()) return {entry.get<double>(), 0.0};
    if (entry.is_array() && entry.size() == 2 && entry[0].is_number() && entry[1].is_number())
        return {entry[0].get<double>(), entry[1].get<double>()};
    parse_error("entry must be a number or an [re, im] pair, got " + entry.dump());
}

Dims parse_dims(const Json &doc) {
    if (!doc.contains("dims") || !doc["dims"].is_array()) parse_error("missing integer list 'dims'");
    Dims dims;
    for (const auto &d : doc["dims"]) {
        if (!d.is_number_integer()) parse_error("'dims' entries must be integers");
        dims.push_back(d.get<int>());
    }
    check_dims(dims);
    return dims;
}

// Row-major list of `count` complex values. When the top-level list has
// `rows` items instead of `count`, each item is read as a row.
std::vector<std::complex<double>> flatten_entries(const Json &entries, std::size_t count, std::size_t rows) {
    if (!entries.is_array()) parse_error("'entries' must be a list");
    std::vector<std::complex<double>> out;
    out.reserve(count);
    if (entries.size() == count || rows == 0 || entries.size() != rows) {
        for (const auto &item : entries) out.push_back(parse_entry(item));
        return out;
    }
    for (const auto &row : entries) {
        if (!row.is_array()) parse_error("nested entries must be lists");
        for (const auto &x : row) out.push_back(parse_entry(x));
    }
    return out;
}

Json entry_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

CMatrix<double> square_from(const std::vector<std::complex<double>> &flat, long dim, const char *what) {
    if (static_cast<long>(flat.size()) != dim * dim)
        throw ValidationError(ErrorKind::DimensionMismatch, std::string(what) + " needs " + std::to_string(dim * dim) +
                                                                " entries, got " + std::to_string(flat.size()));
    CMatrix<double> m(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) m(i, j) = flat[static_cast<std::size_t>(i * dim + j)];
    return m;
}

Json load_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) parse_error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        parse_error("'" + path + "': " + e.what());
    }
}

int parse_int(std::string_view text, const std::string &context) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) parse_error("expected integer in '" + context + "'");
    return value;
}

double parse_double(const std::string &text, const std::string &context) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) parse_error("expected number in '" + context + "'");
        return value;
    } catch (const std::logic_error &) {
        parse_error("expected number in '" + context + "'");
    }
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<AnyState> resolve_factory(const std::string &source) {
    const auto colon = source.find(':');
    if (colon == std::string::npos) return std::nullopt;
    const std::string family = source.substr(0, colon);
    const std::string rest = source.substr(colon + 1);

    if (family == "file") return read_state_file(rest);
    if (family == "wnoise") {
        const auto last = rest.rfind(':');
        if (last == std::string::npos || rest.compare(last + 1, 2, "p=") != 0)
            parse_error("wnoise spec must end with ':p=<weight>': '" + source + "'");
        const double p = parse_double(rest.substr(last + 3), source);
        return states::white_noise_mix(resolve_pure(rest.substr(0, last)), p);
    }
    if (family == "ghzdiag") {
        std::vector<double> probs;
        for (const auto &token : split(rest, ',')) probs.push_back(parse_double(token, source));
        return states::ghz_diagonal<double>(probs);
    }

    const auto parts = split(rest, ':');
    const int n = parse_int(parts.front(), source);
    if (family == "ghz") {
        double phase = 0;
        std::uint64_t flip = 0;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            const auto &opt = parts[i];
            if (opt.rfind("phase=", 0) == 0) {
                phase = parse_double(opt.substr(6), source);
            } else if (opt.rfind("flip=", 0) == 0) {
                const auto bits = opt.substr(5);
                if (static_cast<int>(bits.size()) != n) parse_error("flip pattern length must equal N in '" + source + "'");
                for (std::size_t k = 0; k < bits.size(); ++k) {
                    if (bits[k] != '0' && bits[k] != '1') parse_error("flip pattern must be binary in '" + source + "'");
                    if (bits[k] == '1') flip |= std::uint64_t{1} << k;
                }
            } else {
                parse_error("unknown ghz option '" + opt + "'");
            }
        }
        return states::ghz(n, phase, flip);
    }
    if (parts.size() != 1) parse_error("unexpected options in '" + source + "'");
    if (family == "w") return states::w_state(n);
    if (family == "cluster") return states::linear_cluster(n);
    if (family == "product") {
        if (n < 1 || n > 30) parse_error("product register size out of range");
        return states::basis_state(Dims(static_cast<std::size_t>(n), 2), 0);
    }
    return std::nullopt;
}

} // namespace

AnyState parse_state_document(const Json &doc) {
    if (!doc.is_object()) parse_error("state document must be an object");
    const Dims dims = parse_dims(doc);
    if (!doc.contains("kind") || !doc["kind"].is_string()) parse_error("missing string 'kind'");
    const auto kind = doc["kind"].get<std::string>();
    if (!doc.contains("entries")) parse_error("missing 'entries'");
    const long dim = total_dimension(dims);
    const auto udim = static_cast<std::size_t>(dim);
    const auto flat = kind == "pure" ? flatten_entries(doc["entries"], udim, 0)
                                     : flatten_entries(doc["entries"], udim * udim, udim);
    if (kind == "pure") {
        if (static_cast<long>(flat.size()) != dim)
            throw ValidationError(ErrorKind::DimensionMismatch,
                                  "pure state needs " + std::to_string(dim) + " entries, got " + std::to_string(flat.size()));
        CVector<double> amp(dim);
        for (long i = 0; i < dim; ++i) amp(i) = flat[static_cast<std::size_t>(i)];
        return PureState(dims, amp);
    }
    if (kind == "density") return DensityOperator(dims, square_from(flat, dim, "density operator"));
    parse_error("kind must be 'pure' or 'density', got '" + kind + "'");
}

AnyState read_state_file(const std::string &path) { return parse_state_document(load_json_file(path)); }

Json state_document(const AnyState &state) {
    Json doc;
    return std::visit(
        [&](const auto &s) {
            doc["dims"] = s.dims();
            Json entries = Json::array();
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, PureState>) {
                doc["kind"] = "pure";
                for (long i = 0; i < s.dimension(); ++i) entries.push_back(entry_json(s.amplitudes()(i)));
            } else {
                doc["kind"] = "density";
                for (long i = 0; i < s.dimension(); ++i)
                    for (long j = 0; j < s.dimension(); ++j) entries.push_back(entry_json(s.matrix()(i, j)));
            }
            doc["entries"] = std::move(entries);
            return doc;
        },
        state);
}

AnyState resolve_state(const std::string &source) {
    if (source.empty()) parse_error("empty state source");
    if (!std::filesystem::exists(source))
        if (auto factory = resolve_factory(source)) return std::move(*factory);
    if (std::filesystem::exists(source)) return read_state_file(source);
    parse_error("'" + source + "' is neither a known factory spec nor a readable file");
}

PureState resolve_pure(const std::string &source) {
    auto state = resolve_state(source);
    if (auto *pure = std::get_if<PureState>(&state)) return std::move(*pure);
    throw ValidationError(ErrorKind::Parse, "'" + source + "' is not a pure state");
}

DensityOperator as_density(const AnyState &state) {
    if (const auto *pure = std::get_if<PureState>(&state)) return DensityOperator::pure(*pure);
    return std::get<DensityOperator>(state);
}

ReferenceBasis resolve_basis(const std::string &source, long dimension) {
    if (source == "computational") return ReferenceBasis::computational(dimension);
    const Json doc = load_json_file(source);
    if (!doc.is_object() || doc.value("kind", "") != "basis") parse_error("basis file must have kind 'basis'");
    const auto udim = static_cast<std::size_t>(dimension);
    const auto flat = flatten_entries(doc.at("entries"), udim * udim, udim);
    return ReferenceBasis(square_from(flat, dimension, "basis matrix"));
}

} // namespace fidbound::cli
