// SPDX-License-Identifier: Apache-2.0
//
// JSON array documents, CSV output and config hashing.

#pragma once

#include "ris/single_element.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ris
{
    using json = nlohmann::json;

    // {lambda, eta?, positions: [[x,y,z]...],
    //  configs: [{type: "unitary", matrix: 6x6 of [re,im]} | {type: "named", case: "B1".."B6", rho, phi}],
    //  r_in?, r_out?: [x,y,z], p_in?, p_out?: [x,y,z] real or [[re,im] x3]}
    struct ArrayDocument
    {
        Wavenumber wn = Wavenumber::from_lambda(1.0);
        std::vector<Vec3> positions;
        std::vector<ParticleConfig> configs;
        std::optional<Vec3> r_in, r_out;
        std::optional<CVec3> p_in, p_out;
    };

    namespace detail
    {
        inline double number(const json &j, const char *what)
        {
            if (!j.is_number())
                throw ValidationError(std::string(what) + " must be a number");
            const double v = j.get<double>();
            if (!std::isfinite(v))
                throw ValidationError(std::string(what) + " must be finite");
            return v;
        }

        inline Complex complex_entry(const json &j, const char *what)
        {
            if (j.is_number())
                return {number(j, what), 0.0};
            if (!j.is_array() || j.size() != 2)
                throw ValidationError(std::string(what) + " must be a number or an [re, im] pair");
            return {number(j[0], what), number(j[1], what)};
        }

        inline Vec3 real3(const json &j, const char *what)
        {
            if (!j.is_array() || j.size() != 3)
                throw ValidationError(std::string(what) + " must be a 3-vector");
            return {number(j[0], what), number(j[1], what), number(j[2], what)};
        }

        inline CVec3 complex3(const json &j, const char *what)
        {
            if (!j.is_array() || j.size() != 3)
                throw ValidationError(std::string(what) + " must be a 3-vector");
            return {complex_entry(j[0], what), complex_entry(j[1], what), complex_entry(j[2], what)};
        }
    } // namespace detail

    inline ParticleConfig parse_config(const json &j)
    {
        if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
            throw ValidationError("config entry needs a string 'type'");
        const std::string type = j["type"];
        if (type == "named")
        {
            if (!j.contains("case") || !j["case"].is_string())
                throw ValidationError("named config needs 'case'");
            const auto c = parse_named_case(j["case"].get<std::string>());
            if (!c)
                throw ValidationError("unknown named case '" + j["case"].get<std::string>() + "'");
            const double rho = j.contains("rho") ? detail::number(j["rho"], "rho") : 0.0;
            if (j.contains("phi"))
                detail::number(j["phi"], "phi"); // accepted for completeness; no catalog entry depends on it
            return named_config(*c, rho);
        }
        if (type == "unitary")
        {
            const json &m = j.value("matrix", json());
            if (!m.is_array() || m.size() != 6)
                throw ValidationError("unitary matrix must have 6 rows");
            CMat6 u;
            for (int r = 0; r < 6; ++r)
            {
                if (!m[r].is_array() || m[r].size() != 6)
                    throw ValidationError("unitary matrix rows must have 6 entries");
                for (int c = 0; c < 6; ++c)
                    u(r, c) = detail::complex_entry(m[r][c], "matrix entry");
            }
            return ParticleConfig::from_unitary(u);
        }
        throw ValidationError("unknown config type '" + type + "'");
    }

    inline ArrayDocument parse_array_document(const json &j)
    {
        if (!j.is_object())
            throw ValidationError("array document must be a JSON object");
        ArrayDocument doc;
        const double lambda = j.contains("lambda") ? detail::number(j["lambda"], "lambda") : 1.0;
        const double eta = j.contains("eta") ? detail::number(j["eta"], "eta") : 1.0;
        doc.wn = Wavenumber::from_lambda(lambda, eta);

        if (!j.contains("positions") || !j["positions"].is_array() || j["positions"].empty())
            throw ValidationError("'positions' must be a non-empty array");
        for (const auto &p : j["positions"])
            doc.positions.push_back(detail::real3(p, "position"));

        if (!j.contains("configs") || !j["configs"].is_array())
            throw ValidationError("'configs' must be an array");
        for (const auto &c : j["configs"])
            doc.configs.push_back(parse_config(c));
        if (doc.configs.size() != doc.positions.size())
            throw ValidationError("'configs' and 'positions' must have the same length");

        if (j.contains("r_in"))
            doc.r_in = detail::real3(j["r_in"], "r_in");
        if (j.contains("r_out"))
            doc.r_out = detail::real3(j["r_out"], "r_out");
        if (j.contains("p_in"))
            doc.p_in = detail::complex3(j["p_in"], "p_in");
        if (j.contains("p_out"))
            doc.p_out = detail::complex3(j["p_out"], "p_out");
        return doc;
    }

    inline json read_json_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ValidationError("cannot open '" + path + "'");
        try
        {
            return json::parse(in);
        }
        catch (const json::parse_error &e)
        {
            throw ValidationError("malformed JSON in '" + path + "': " + e.what());
        }
    }

    inline ArrayDocument load_array_document(const std::string &path)
    {
        return parse_array_document(read_json_file(path));
    }

    // 64-bit FNV-1a over the canonical (sorted-key) serialization.
    inline std::string config_hash(const json &j)
    {
        uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : j.dump())
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    // Round-trippable and locale independent.
    inline std::string fmt_double(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    class CsvWriter
    {
    public:
        CsvWriter(std::ostream &os, std::vector<std::string> header) : os_(os), cols_(header.size())
        {
            write_row(header);
        }

        void row(const std::vector<std::string> &fields)
        {
            if (fields.size() != cols_)
                throw ValidationError("CSV row width does not match header");
            write_row(fields);
        }

    private:
        void write_row(const std::vector<std::string> &fields)
        {
            for (size_t i = 0; i < fields.size(); ++i)
            {
                if (i)
                    os_ << ',';
                const std::string &f = fields[i];
                if (f.find_first_of(",\"\n") != std::string::npos)
                {
                    os_ << '"';
                    for (char c : f)
                        os_ << (c == '"' ? "\"\"" : std::string(1, c));
                    os_ << '"';
                }
                else
                    os_ << f;
            }
            os_ << '\n';
        }

        std::ostream &os_;
        size_t cols_;
    };
} // namespace ris
