// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/io.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace nirom
{

//------------------------------------------------------------------------------
// Numbers
//------------------------------------------------------------------------------

std::string format_double(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string format_hex(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v < 0 ? "-inf" : "inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, std::abs(v), std::chars_format::hex);
    return (std::signbit(v) ? "-0x" : "0x") + std::string(buf, r.ptr);
}

double parse_double(const std::string& text)
{
    std::string s = text;
    const auto first = s.find_first_not_of(" \t\r");
    const auto last = s.find_last_not_of(" \t\r");
    if (first == std::string::npos)
        throw Error(ErrorCode::ParseError, "empty number");
    s = s.substr(first, last - first + 1);

    bool negative = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-')
    {
        negative = s[pos] == '-';
        ++pos;
    }
    const std::string body = s.substr(pos);
    double v = 0.0;
    if (body == "inf" || body == "infinity")
    {
        v = std::numeric_limits<double>::infinity();
    }
    else if (body == "nan")
    {
        v = std::numeric_limits<double>::quiet_NaN();
    }
    else
    {
        const bool hex = body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X');
        const char* b = body.data() + (hex ? 2 : 0);
        const char* e = body.data() + body.size();
        const auto r = std::from_chars(b, e, v, hex ? std::chars_format::hex : std::chars_format::general);
        if (r.ec != std::errc() || r.ptr != e || b == e)
            throw Error(ErrorCode::ParseError, "not a number: '" + text + "'");
    }
    return negative ? -v : v;
}

std::vector<std::string> split_words(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w)
        out.push_back(w);
    return out;
}

namespace
{

std::vector<std::string> split_commas(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::string strip(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
    return f;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    return f;
}

void finish_write(std::ofstream& f, const std::string& path)
{
    f.flush();
    if (!f)
        throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

} // namespace

//------------------------------------------------------------------------------
// CSV
//------------------------------------------------------------------------------

void write_csv(std::ostream& os, const TimeSeriesData& data)
{
    os << "t";
    for (Index i = 0; i < data.n_inputs(); ++i)
        os << ",u" << (i + 1);
    for (Index j = 0; j < data.n_outputs(); ++j)
        os << ",z" << (j + 1);
    os << '\n';
    for (Index k = 0; k < data.samples(); ++k)
    {
        os << format_double(data.time(k));
        for (Index i = 0; i < data.n_inputs(); ++i)
            os << ',' << format_double(data.U(i, k));
        for (Index j = 0; j < data.n_outputs(); ++j)
            os << ',' << format_double(data.Z(j, k));
        os << '\n';
    }
}

void write_csv(const std::string& path, const TimeSeriesData& data)
{
    std::ofstream f = open_out(path);
    write_csv(f, data);
    finish_write(f, path);
}

TimeSeriesData read_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line))
        throw Error(ErrorCode::IoError, "data file is empty");
    const std::vector<std::string> header = split_commas(strip(line));
    if (header.empty() || strip(header[0]) != "t")
        throw Error(ErrorCode::IoError, "data header must start with 't'");
    Index n_u = 0;
    Index n_z = 0;
    for (std::size_t c = 1; c < header.size(); ++c)
    {
        const std::string name = strip(header[c]);
        const std::string expect_u = "u" + std::to_string(n_u + 1);
        const std::string expect_z = "z" + std::to_string(n_z + 1);
        if (n_z == 0 && name == expect_u)
            ++n_u;
        else if (name == expect_z)
            ++n_z;
        else
            throw Error(ErrorCode::IoError, "unexpected column '" + name + "' in data header");
    }

    std::vector<double> times;
    std::vector<std::vector<double>> rows;
    Index lineno = 1;
    while (std::getline(is, line))
    {
        ++lineno;
        if (strip(line).empty())
            continue;
        const std::vector<std::string> cells = split_commas(strip(line));
        if (cells.size() != header.size())
            throw Error(ErrorCode::IoError, "line " + std::to_string(lineno) + " has " +
                                                std::to_string(cells.size()) + " fields, expected " +
                                                std::to_string(header.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        try
        {
            for (const auto& c : cells)
                row.push_back(parse_double(c));
        }
        catch (const Error& e)
        {
            throw Error(ErrorCode::IoError, "line " + std::to_string(lineno) + ": " + e.what());
        }
        times.push_back(row[0]);
        rows.push_back(std::move(row));
    }
    const Index N = static_cast<Index>(rows.size());
    MatrixXd U(n_u, N);
    MatrixXd Z(n_z, N);
    for (Index k = 0; k < N; ++k)
    {
        const auto& row = rows[static_cast<std::size_t>(k)];
        for (Index i = 0; i < n_u; ++i)
            U(i, k) = row[static_cast<std::size_t>(1 + i)];
        for (Index j = 0; j < n_z; ++j)
            Z(j, k) = row[static_cast<std::size_t>(1 + n_u + j)];
    }
    try
    {
        return TimeSeriesData::from_times(times, std::move(U), std::move(Z));
    }
    catch (const Error& e)
    {
        throw Error(ErrorCode::IoError, std::string("invalid data: ") + e.what());
    }
}

TimeSeriesData read_csv(const std::string& path)
{
    std::ifstream f = open_in(path);
    return read_csv(f);
}

//------------------------------------------------------------------------------
// Model file
//------------------------------------------------------------------------------

namespace
{

void write_matrix(std::ostream& os, const char* name, const MatrixXd& M)
{
    os << "matrix " << name << ' ' << M.rows() << ' ' << M.cols() << '\n';
    for (Index i = 0; i < M.rows(); ++i)
    {
        for (Index j = 0; j < M.cols(); ++j)
            os << (j ? " " : "") << format_hex(M(i, j));
        os << '\n';
    }
}

std::string one_line(std::string s)
{
    for (char& c : s)
    {
        if (c == '\n' || c == '\r')
            c = ' ';
    }
    return s;
}

[[noreturn]] void bad_model(const std::string& what)
{
    throw Error(ErrorCode::IoError, "malformed model file: " + what);
}

Index parse_index(const std::string& s)
{
    Index v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        bad_model("expected an integer, got '" + s + "'");
    return v;
}

} // namespace

void write_model(std::ostream& os, const InferredModel& model)
{
    model.validate();
    os << "nirom-model 1\n";
    os << "class " << to_string(model.model_class) << '\n';
    os << "h " << format_hex(model.h) << '\n';
    os << "dims " << model.order() << ' ' << model.n_inputs() << ' ' << model.n_outputs() << '\n';
    os << "delay";
    for (Index t : model.delay.tau)
        os << ' ' << t;
    os << '\n';
    for (const auto& [k, v] : model.metadata)
        os << "meta " << one_line(k) << " = " << one_line(v) << '\n';
    write_matrix(os, "A", model.A);
    write_matrix(os, "B", model.B);
    write_matrix(os, "C", model.C);
    write_matrix(os, "D", model.D);
    write_matrix(os, "N", model.N);
    write_matrix(os, "F", model.F);
    write_matrix(os, "G", model.G);
    os << "end\n";
}

void write_model(const std::string& path, const InferredModel& model)
{
    std::ofstream f = open_out(path);
    write_model(f, model);
    finish_write(f, path);
}

InferredModel read_model(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || strip(line) != "nirom-model 1")
        bad_model("missing 'nirom-model 1' header");

    InferredModel m;
    bool have_dims = false;
    bool ended = false;
    std::set<std::string> seen;
    Index r = 0, n_u = 0, n_z = 0;
    while (std::getline(is, line))
    {
        const std::string t = strip(line);
        if (t.empty())
            continue;
        const auto space = t.find(' ');
        const std::string key = t.substr(0, space);
        const std::string rest = space == std::string::npos ? "" : strip(t.substr(space + 1));
        if (key == "end")
        {
            ended = true;
            break;
        }
        if (key == "class")
        {
            try
            {
                m.model_class = model_class_from_string(rest);
            }
            catch (const Error& e)
            {
                bad_model(e.what());
            }
        }
        else if (key == "h")
        {
            try
            {
                m.h = parse_double(rest);
            }
            catch (const Error& e)
            {
                bad_model(e.what());
            }
        }
        else if (key == "dims")
        {
            const auto w = split_words(rest);
            if (w.size() != 3)
                bad_model("dims needs three integers");
            r = parse_index(w[0]);
            n_u = parse_index(w[1]);
            n_z = parse_index(w[2]);
            have_dims = true;
        }
        else if (key == "delay")
        {
            std::vector<Index> tau;
            for (const auto& w : split_words(rest))
                tau.push_back(parse_index(w));
            m.delay = DelayOperator(std::move(tau));
        }
        else if (key == "meta")
        {
            const auto eq = rest.find(" = ");
            if (eq == std::string::npos)
                bad_model("meta line without ' = '");
            m.metadata[rest.substr(0, eq)] = rest.substr(eq + 3);
        }
        else if (key == "matrix")
        {
            const auto w = split_words(rest);
            if (w.size() != 3)
                bad_model("matrix header needs a name and two dimensions");
            const Index rows = parse_index(w[1]);
            const Index cols = parse_index(w[2]);
            if (rows < 0 || cols < 0)
                bad_model("negative matrix dimension");
            MatrixXd M(rows, cols);
            for (Index i = 0; i < rows; ++i)
            {
                if (!std::getline(is, line))
                    bad_model("matrix " + w[0] + " is truncated");
                const auto vals = split_words(line);
                if (static_cast<Index>(vals.size()) != cols)
                    bad_model("matrix " + w[0] + " row " + std::to_string(i) + " has " +
                              std::to_string(vals.size()) + " values");
                for (Index j = 0; j < cols; ++j)
                {
                    try
                    {
                        M(i, j) = parse_double(vals[static_cast<std::size_t>(j)]);
                    }
                    catch (const Error& e)
                    {
                        bad_model(e.what());
                    }
                }
            }
            const std::string& name = w[0];
            if (name == "A") m.A = std::move(M);
            else if (name == "B") m.B = std::move(M);
            else if (name == "C") m.C = std::move(M);
            else if (name == "D") m.D = std::move(M);
            else if (name == "N") m.N = std::move(M);
            else if (name == "F") m.F = std::move(M);
            else if (name == "G") m.G = std::move(M);
            else bad_model("unknown matrix '" + name + "'");
            if (!seen.insert(name).second)
                bad_model("matrix " + name + " given twice");
        }
        else
        {
            bad_model("unknown record '" + key + "'");
        }
    }
    if (!ended)
        bad_model("missing 'end'");
    if (!have_dims)
        bad_model("missing dims");
    for (const char* name : {"A", "B", "C"})
    {
        if (!seen.count(name))
            bad_model(std::string("missing matrix ") + name);
    }
    if (m.A.rows() != r || m.B.cols() != n_u || m.C.rows() != n_z)
        bad_model("matrix shapes disagree with dims");
    try
    {
        m.normalize();
    }
    catch (const Error& e)
    {
        bad_model(e.what());
    }
    return m;
}

InferredModel read_model(const std::string& path)
{
    std::ifstream f = open_in(path);
    return read_model(f);
}

//------------------------------------------------------------------------------
// Config
//------------------------------------------------------------------------------

Config Config::parse(std::istream& is, const std::set<std::string>& allowed)
{
    Config cfg;
    std::string line;
    Index lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        const auto hash = line.find('#');
        const std::string t = strip(hash == std::string::npos ? line : line.substr(0, hash));
        if (t.empty())
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ParseError,
                        "config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = strip(t.substr(0, eq));
        const std::string value = strip(t.substr(eq + 1));
        if (key.empty())
            throw Error(ErrorCode::ParseError, "config line " + std::to_string(lineno) + ": empty key");
        if (!allowed.count(key))
            throw Error(ErrorCode::ParseError,
                        "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        cfg.values_[key].push_back(value);
    }
    return cfg;
}

Config Config::parse_string(const std::string& text, const std::set<std::string>& allowed)
{
    std::istringstream in(text);
    return parse(in, allowed);
}

Config Config::load(const std::string& path, const std::set<std::string>& allowed)
{
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorCode::ParseError, "cannot read config '" + path + "'");
    return parse(f, allowed);
}

std::optional<std::string> Config::get(const std::string& key) const
{
    const auto it = values_.find(key);
    if (it == values_.end() || it->second.empty())
        return std::nullopt;
    return it->second.back();
}

std::vector<std::string> Config::get_all(const std::string& key) const
{
    const auto it = values_.find(key);
    return it == values_.end() ? std::vector<std::string>{} : it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const
{
    return get(key).value_or(fallback);
}

double Config::get_double(const std::string& key, double fallback) const
{
    const auto v = get(key);
    if (!v)
        return fallback;
    try
    {
        return parse_double(*v);
    }
    catch (const Error&)
    {
        throw Error(ErrorCode::ParseError, "config key '" + key + "': not a number: '" + *v + "'");
    }
}

Index Config::get_index(const std::string& key, Index fallback) const
{
    const auto v = get(key);
    if (!v)
        return fallback;
    Index out = 0;
    const auto r = std::from_chars(v->data(), v->data() + v->size(), out);
    if (r.ec != std::errc() || r.ptr != v->data() + v->size())
        throw Error(ErrorCode::ParseError, "config key '" + key + "': not an integer: '" + *v + "'");
    return out;
}

bool Config::get_bool(const std::string& key, bool fallback) const
{
    const auto v = get(key);
    if (!v)
        return fallback;
    if (*v == "true" || *v == "1" || *v == "yes")
        return true;
    if (*v == "false" || *v == "0" || *v == "no")
        return false;
    throw Error(ErrorCode::ParseError, "config key '" + key + "': not a boolean: '" + *v + "'");
}

} // namespace nirom
