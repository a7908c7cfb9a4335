// SPDX-License-Identifier: Apache-2.0
//
// elaagen - near-field fading channel generator for extremely large aperture arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "elaa/io.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "elaa/errors.hpp"

namespace elaa
{

namespace
{

constexpr char magic[8] = {'E', 'L', 'A', 'A', 'C', 'H', '0', '1'};

void store_u32_le(std::ofstream &out, std::uint32_t v)
{
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char *>(b), 4);
}

std::uint32_t load_u32_le(std::ifstream &in)
{
    unsigned char b[4];
    in.read(reinterpret_cast<char *>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void store_f64_le(std::ofstream &out, double v)
{
    std::uint64_t u = std::bit_cast<std::uint64_t>(v);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<unsigned char>(u >> (8 * i));
    out.write(reinterpret_cast<const char *>(b), 8);
}

double load_f64_le(std::ifstream &in)
{
    unsigned char b[8];
    in.read(reinterpret_cast<char *>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i)
        u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(u);
}

std::ofstream open_out(const std::string &path, std::ios::openmode mode = std::ios::out)
{
    std::ofstream out(path, mode);
    if (!out)
        throw io_error("cannot open '" + path + "' for writing");
    return out;
}

void finish(std::ofstream &out, const std::string &path)
{
    out.flush();
    if (!out)
        throw io_error("write failed for '" + path + "'");
}

} // namespace

void write_channel_binary(const std::string &path, const ChannelRealization &realization, bool pre_sensing)
{
    if (realization.per_mt.empty())
        throw std::invalid_argument("write_channel_binary: empty realization");
    const std::size_t n_ant = realization.per_mt.front().n_antennas();
    for (const MtRealization &mt : realization.per_mt)
    {
        if (mt.n_antennas() != n_ant)
            throw std::invalid_argument("write_channel_binary: MTs have differing antenna counts");
        if (pre_sensing && !mt.pre_sensing)
            throw std::invalid_argument("write_channel_binary: no pre-sensing snapshot present");
    }

    std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
    out.write(magic, sizeof(magic));
    store_u32_le(out, 1);
    store_u32_le(out, static_cast<std::uint32_t>(realization.per_mt.size()));
    store_u32_le(out, static_cast<std::uint32_t>(realization.array.n_rows()));
    store_u32_le(out, static_cast<std::uint32_t>(realization.array.n_cols()));
    store_u32_le(out, static_cast<std::uint32_t>(n_ant));

    for (const MtRealization &mt : realization.per_mt)
    {
        const auto &grid = pre_sensing ? mt.pre_sensing->h : mt.h;
        for (const std::complex<double> &v : grid.data())
        {
            store_f64_le(out, v.real());
            store_f64_le(out, v.imag());
        }
    }
    finish(out, path);
}

ChannelFile read_channel_binary(const std::string &path)
{
    std::ifstream in(path, std::ios::in | std::ios::binary);
    if (!in)
        throw io_error("cannot open '" + path + "' for reading");

    char got[8];
    in.read(got, 8);
    if (!in || std::memcmp(got, magic, 8) != 0)
        throw io_error("'" + path + "' is not a channel binary (bad magic)");

    ChannelFile file;
    file.version = load_u32_le(in);
    if (file.version != 1)
        throw io_error("'" + path + "': unsupported channel format version");
    file.n_mts = load_u32_le(in);
    file.n_rows = load_u32_le(in);
    file.n_cols = load_u32_le(in);
    file.n_mt_antennas = load_u32_le(in);
    if (!in)
        throw io_error("'" + path + "': truncated header");
    const std::uint64_t total = static_cast<std::uint64_t>(file.n_mts) * file.n_rows * file.n_cols *
                                file.n_mt_antennas;
    if (total > (1ull << 32))
        throw io_error("'" + path + "': implausible header dimensions");

    const std::size_t per_mt =
        static_cast<std::size_t>(file.n_rows) * file.n_cols * file.n_mt_antennas;
    file.h.resize(file.n_mts);
    for (auto &block : file.h)
    {
        block.resize(per_mt);
        for (auto &v : block)
        {
            const double re = load_f64_le(in);
            const double im = load_f64_le(in);
            v = {re, im};
        }
    }
    if (!in)
        throw io_error("'" + path + "': truncated payload");
    return file;
}

void write_states_csv(const std::string &path, const MtRealization &mt)
{
    std::ofstream out = open_out(path);
    out << "row,col,state,window_id\n";
    const std::size_t n_cols = mt.partition.n_cols;
    for (std::size_t m = 0; m < mt.n_elements(); ++m)
        out << m / n_cols << ',' << m % n_cols << ',' << to_string(mt.state[m]) << ','
            << mt.partition.window_of[m] << '\n';
    finish(out, path);
}

void write_states_csv_pre(const std::string &path, const MtRealization &mt)
{
    if (!mt.pre_sensing)
        throw std::invalid_argument("write_states_csv_pre: no pre-sensing snapshot");
    std::ofstream out = open_out(path);
    out << "row,col,state,window_id\n";
    const std::size_t n_cols = mt.partition.n_cols;
    for (std::size_t m = 0; m < mt.n_elements(); ++m)
        out << m / n_cols << ',' << m % n_cols << ',' << to_string(mt.pre_sensing->state[m]) << ','
            << mt.partition.window_of[m] << '\n';
    finish(out, path);
}

void write_windows_csv(const std::string &path, const MtRealization &mt)
{
    std::ofstream out = open_out(path);
    out << "mt_index,row_start,row_end,col_start,col_end,state\n";
    for (const WindowRect &w : mt.partition.windows)
        out << mt.partition.mt_index << ',' << w.row_start << ',' << w.row_end << ',' << w.col_start << ','
            << w.col_end << ',' << to_string(w.state) << '\n';
    finish(out, path);
}

void write_mask_csv(const std::string &path, const MtRealization &mt)
{
    std::ofstream out = open_out(path);
    out << "mt_index,row,col,blocked\n";
    const std::size_t n_cols = mt.partition.n_cols;
    for (std::size_t m = 0; m < mt.n_elements(); ++m)
        out << mt.partition.mt_index << ',' << m / n_cols << ',' << m % n_cols << ','
            << (mt.mask.at(m) ? 1 : 0) << '\n';
    finish(out, path);
}

void write_rss_csv(const std::string &path, const RssMap &map)
{
    std::ofstream out = open_out(path);
    out.precision(17);
    out << "row,col,rss_db\n";
    for (std::size_t m = 0; m < map.rss_db.size(); ++m)
        out << m / map.n_cols << ',' << m % map.n_cols << ',' << map.rss_db[m] << '\n';
    finish(out, path);
}

std::vector<std::string> write_outputs(const ChannelRealization &realization, const SimulationConfig &config,
                                       const nlohmann::json &config_json, const std::string &out_dir)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw io_error("cannot create output directory '" + out_dir + "': " + ec.message());

    const bool has_objects = !config.objects.empty();
    const auto want = [&](OutputKind k) {
        return std::find(config.outputs.begin(), config.outputs.end(), k) != config.outputs.end();
    };
    const auto join = [&](const std::string &name) { return (fs::path(out_dir) / name).string(); };

    std::vector<std::string> written;
    const auto note = [&](const std::string &path) { written.push_back(path); };

    if (want(OutputKind::channel))
    {
        write_channel_binary(join("channel.bin"), realization);
        note("channel.bin");
        if (has_objects)
        {
            write_channel_binary(join("channel_pre.bin"), realization, true);
            note("channel_pre.bin");
        }
    }

    for (std::size_t i = 0; i < realization.per_mt.size(); ++i)
    {
        const MtRealization &mt = realization.per_mt[i];
        const std::string tag = std::to_string(i);

        if (want(OutputKind::states))
        {
            write_states_csv(join("states_" + tag + ".csv"), mt);
            note("states_" + tag + ".csv");
            if (has_objects)
            {
                write_states_csv_pre(join("states_pre_" + tag + ".csv"), mt);
                note("states_pre_" + tag + ".csv");
            }
        }
        if (want(OutputKind::windows))
        {
            write_windows_csv(join("windows_" + tag + ".csv"), mt);
            note("windows_" + tag + ".csv");
        }
        if (want(OutputKind::mask) && has_objects)
        {
            write_mask_csv(join("mask_" + tag + ".csv"), mt);
            note("mask_" + tag + ".csv");
        }
        if (want(OutputKind::rss))
        {
            if (config.rss_mode == RssMode::per_antenna)
            {
                for (std::size_t k = 0; k < mt.n_antennas(); ++k)
                {
                    const std::string name = "rss_" + tag + "_a" + std::to_string(k) + ".csv";
                    write_rss_csv(join(name), rss_map(mt, RssMode::first_antenna, k));
                    note(name);
                }
            }
            else
            {
                write_rss_csv(join("rss_" + tag + ".csv"), rss_map(mt, config.rss_mode));
                note("rss_" + tag + ".csv");
            }
        }
    }

    // Manifest goes last: its presence certifies a complete write.
    char hash_text[19];
    std::snprintf(hash_text, sizeof(hash_text), "0x%016llx",
                  static_cast<unsigned long long>(config_hash(config_json)));
    nlohmann::json manifest;
    manifest["format"] = "elaagen-outputs";
    manifest["seed"] = config.seed;
    manifest["config_hash"] = hash_text;
    manifest["files"] = written;

    std::ofstream out = open_out(join("manifest.json"));
    out << manifest.dump(2) << '\n';
    finish(out, join("manifest.json"));
    note("manifest.json");
    return written;
}

} // namespace elaa
