//! File-based protocol state: one directory per ceremony.
//!
//! Fixed layout inside the archive directory:
//!
//! | file          | contents                               | mode |
//! |---------------|----------------------------------------|------|
//! | `manifest`    | scheme id and parameters               | 644  |
//! | `master.key`  | the dealer/time-server master key      | 600  |
//! | `share.<i>`   | participant i's share                  | 600  |
//! | `signal.<t>`  | the broadcast for period t             | 644  |
//! | `public.<t>`  | published values of the period-t dealing | 644 |
//!
//! Every file is line-oriented text: a one-line `trss <kind> v1` header,
//! then `key = value` records. All numbers are lowercase hex. The secure
//! channels of the protocol are modelled purely as file modes: key and
//! share files are owner-only, signals and published values are
//! world-readable.
//!
//! Writers emit fields in a fixed order with `\n` endings, so a fixed seed
//! reproduces archives byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldModulus};
use crate::hybrid::{
    HybridMasterKey, HybridParams, HybridShare, HybridShareValue, HybridSignalValue,
    HybridTimeSignal, PublicParams, Variant,
};
use crate::kn::{KnMasterKey, KnParams, KnShare, KnTimeSignal};
use crate::scheme::Scheme;

const MANIFEST_KIND: &str = "manifest";
const MASTER_KEY_KIND: &str = "master-key";
const SHARE_KIND: &str = "share";
const SIGNAL_KIND: &str = "signal";
const PUBLIC_KIND: &str = "public-params";

/// A ceremony directory.
pub struct Archive {
    dir: PathBuf,
}

impl Archive {
    /// Creates the directory (if needed) and writes the manifest.
    pub fn create(dir: &Path, scheme: &Scheme) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let archive = Archive { dir: dir.into() };
        let mut fields: Vec<(String, String)> = vec![("scheme".into(), scheme.id().into())];
        match scheme {
            Scheme::Kn(p) => {
                fields.push(("q".into(), hex(p.modulus().order())));
                fields.push(("k".into(), hex(p.threshold())));
                fields.push(("n".into(), hex(p.participants())));
                fields.push(("tau".into(), hex(p.periods())));
            }
            Scheme::Hybrid(p, _) => {
                fields.push(("q".into(), hex(p.modulus().order())));
                fields.push(("k1".into(), hex(p.signal_threshold())));
                fields.push(("k2".into(), hex(p.plain_threshold())));
                fields.push(("n".into(), hex(p.participants())));
                fields.push(("tau".into(), hex(p.periods())));
                fields.push(("ell".into(), hex(p.signal_capacity())));
            }
        }
        write_record(&archive.manifest_path(), MANIFEST_KIND, &fields, false)?;
        Ok(archive)
    }

    /// Opens an existing archive and rebuilds its scheme from the manifest.
    pub fn open(dir: &Path) -> Result<(Self, Scheme)> {
        let archive = Archive { dir: dir.into() };
        let path = archive.manifest_path();
        let fields = read_record(&path, MANIFEST_KIND)?;
        let q = parse_hex(&fields, "q", &path)?;
        let modulus = FieldModulus::new(q)?;
        let scheme = match lookup(&fields, "scheme", &path)? {
            "kn" => Scheme::Kn(KnParams::new(
                modulus,
                parse_hex(&fields, "k", &path)?,
                parse_hex(&fields, "n", &path)?,
                parse_hex(&fields, "tau", &path)?,
            )?),
            id @ ("hybrid-naive" | "hybrid-optimal") => {
                let params = HybridParams::new(
                    modulus,
                    parse_hex(&fields, "k1", &path)?,
                    parse_hex(&fields, "k2", &path)?,
                    parse_hex(&fields, "n", &path)?,
                    parse_hex(&fields, "tau", &path)?,
                    parse_hex(&fields, "ell", &path)?,
                )?;
                let variant = if id == "hybrid-naive" {
                    Variant::Naive
                } else {
                    Variant::Optimal
                };
                Scheme::Hybrid(params, variant)
            }
            other => {
                return Err(Error::parse(path, format!("unknown scheme: {other}")));
            }
        };
        Ok((archive, scheme))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn manifest_path(&self) -> PathBuf {
        self.dir.join("manifest")
    }

    pub fn master_key_path(&self) -> PathBuf {
        self.dir.join("master.key")
    }

    pub fn share_path(&self, participant: u64) -> PathBuf {
        self.dir.join(format!("share.{participant}"))
    }

    pub fn signal_path(&self, time: u64) -> PathBuf {
        self.dir.join(format!("signal.{time}"))
    }

    pub fn public_path(&self, time: u64) -> PathBuf {
        self.dir.join(format!("public.{time}"))
    }

    pub fn write_master_key_kn(&self, key: &KnMasterKey) -> Result<()> {
        let fields = key
            .elements()
            .iter()
            .enumerate()
            .map(|(i, v)| (format!("mask.{}", i + 1), hex(v.value())))
            .collect::<Vec<_>>();
        write_record(&self.master_key_path(), MASTER_KEY_KIND, &fields, true)
    }

    pub fn read_master_key_kn(&self, params: &KnParams) -> Result<KnMasterKey> {
        let path = self.master_key_path();
        let fields = read_record(&path, MASTER_KEY_KIND)?;
        let masks = (1..=params.periods())
            .map(|t| parse_element(&fields, &format!("mask.{t}"), params.modulus(), &path))
            .collect::<Result<Vec<_>>>()?;
        Ok(KnMasterKey::from_elements(masks))
    }

    pub fn write_master_key_hybrid(&self, key: &HybridMasterKey) -> Result<()> {
        let fields = match key {
            HybridMasterKey::Naive(masks) => masks
                .iter()
                .enumerate()
                .map(|(i, v)| (format!("mask.{}", i + 1), hex(v.value())))
                .collect::<Vec<_>>(),
            HybridMasterKey::Optimal(rows) => rows
                .iter()
                .enumerate()
                .flat_map(|(t, row)| {
                    row.iter()
                        .enumerate()
                        .map(move |(i, v)| (format!("mask.{}.{}", t + 1, i + 1), hex(v.value())))
                })
                .collect::<Vec<_>>(),
        };
        write_record(&self.master_key_path(), MASTER_KEY_KIND, &fields, true)
    }

    pub fn read_master_key_hybrid(
        &self,
        params: &HybridParams,
        variant: Variant,
    ) -> Result<HybridMasterKey> {
        let path = self.master_key_path();
        let fields = read_record(&path, MASTER_KEY_KIND)?;
        match variant {
            Variant::Naive => {
                let masks = (1..=params.periods())
                    .map(|t| parse_element(&fields, &format!("mask.{t}"), params.modulus(), &path))
                    .collect::<Result<Vec<_>>>()?;
                Ok(HybridMasterKey::Naive(masks))
            }
            Variant::Optimal => {
                let rows = (1..=params.periods())
                    .map(|t| {
                        (1..=params.signal_capacity())
                            .map(|i| {
                                parse_element(
                                    &fields,
                                    &format!("mask.{t}.{i}"),
                                    params.modulus(),
                                    &path,
                                )
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(HybridMasterKey::Optimal(rows))
            }
        }
    }

    pub fn write_share_kn(&self, share: &KnShare) -> Result<PathBuf> {
        let path = self.share_path(share.participant());
        let fields = vec![
            ("participant".into(), hex(share.participant())),
            ("time".into(), hex(share.time())),
            ("value".into(), hex(share.value().value())),
        ];
        write_record(&path, SHARE_KIND, &fields, true)?;
        Ok(path)
    }

    pub fn write_share_hybrid(&self, share: &HybridShare) -> Result<PathBuf> {
        let path = self.share_path(share.participant());
        let mut fields = vec![
            ("participant".into(), hex(share.participant())),
            ("time".into(), hex(share.time())),
        ];
        match share.value() {
            HybridShareValue::Naive { timed, plain } => {
                fields.push(("timed".into(), hex(timed.value())));
                fields.push(("plain".into(), hex(plain.value())));
            }
            HybridShareValue::Optimal(v) => fields.push(("value".into(), hex(v.value()))),
        }
        write_record(&path, SHARE_KIND, &fields, true)?;
        Ok(path)
    }

    pub fn write_signal_kn(&self, signal: &KnTimeSignal) -> Result<PathBuf> {
        let path = self.signal_path(signal.time());
        let fields = vec![
            ("time".into(), hex(signal.time())),
            ("value".into(), hex(signal.value().value())),
        ];
        write_record(&path, SIGNAL_KIND, &fields, false)?;
        Ok(path)
    }

    pub fn write_signal_hybrid(&self, signal: &HybridTimeSignal) -> Result<PathBuf> {
        let path = self.signal_path(signal.time());
        let mut fields = vec![("time".into(), hex(signal.time()))];
        match signal.value() {
            HybridSignalValue::Naive(v) => fields.push(("value".into(), hex(v.value()))),
            HybridSignalValue::Optimal(masks) => {
                for (i, v) in masks.iter().enumerate() {
                    fields.push((format!("mask.{}", i + 1), hex(v.value())));
                }
            }
        }
        write_record(&path, SIGNAL_KIND, &fields, false)?;
        Ok(path)
    }

    pub fn write_public(&self, public: &PublicParams) -> Result<PathBuf> {
        let path = self.public_path(public.time());
        let mut fields = vec![("time".into(), hex(public.time()))];
        for (i, v) in public.values().iter().enumerate() {
            fields.push((format!("masked.{}", i + 1), hex(v.value())));
        }
        write_record(&path, PUBLIC_KIND, &fields, false)?;
        Ok(path)
    }

    pub fn has_public(&self, time: u64) -> bool {
        self.public_path(time).exists()
    }

    pub fn read_public(&self, time: u64, params: &HybridParams) -> Result<PublicParams> {
        let path = self.public_path(time);
        let fields = read_record(&path, PUBLIC_KIND)?;
        let file_time = parse_hex(&fields, "time", &path)?;
        let values = (1..=params.masked_span())
            .map(|i| parse_element(&fields, &format!("masked.{i}"), params.modulus(), &path))
            .collect::<Result<Vec<_>>>()?;
        Ok(PublicParams::new(file_time, values))
    }
}

pub fn read_share_kn(path: &Path, params: &KnParams) -> Result<KnShare> {
    let fields = read_record(path, SHARE_KIND)?;
    let participant = parse_hex(&fields, "participant", path)?;
    let time = parse_hex(&fields, "time", path)?;
    check_range(participant, 1, params.participants(), "participant", path)?;
    check_range(time, 1, params.periods(), "time", path)?;
    let value = parse_element(&fields, "value", params.modulus(), path)?;
    Ok(KnShare::new(participant, time, value))
}

pub fn read_share_hybrid(
    path: &Path,
    params: &HybridParams,
    variant: Variant,
) -> Result<HybridShare> {
    let fields = read_record(path, SHARE_KIND)?;
    let participant = parse_hex(&fields, "participant", path)?;
    let time = parse_hex(&fields, "time", path)?;
    check_range(participant, 1, params.participants(), "participant", path)?;
    check_range(time, 1, params.periods(), "time", path)?;
    let value = match variant {
        Variant::Naive => HybridShareValue::Naive {
            timed: parse_element(&fields, "timed", params.modulus(), path)?,
            plain: parse_element(&fields, "plain", params.modulus(), path)?,
        },
        Variant::Optimal => {
            HybridShareValue::Optimal(parse_element(&fields, "value", params.modulus(), path)?)
        }
    };
    Ok(HybridShare::new(participant, time, value))
}

pub fn read_signal_kn(path: &Path, params: &KnParams) -> Result<KnTimeSignal> {
    let fields = read_record(path, SIGNAL_KIND)?;
    let time = parse_hex(&fields, "time", path)?;
    check_range(time, 1, params.periods(), "time", path)?;
    let value = parse_element(&fields, "value", params.modulus(), path)?;
    Ok(KnTimeSignal::new(time, value))
}

pub fn read_signal_hybrid(
    path: &Path,
    params: &HybridParams,
    variant: Variant,
) -> Result<HybridTimeSignal> {
    let fields = read_record(path, SIGNAL_KIND)?;
    let time = parse_hex(&fields, "time", path)?;
    check_range(time, 1, params.periods(), "time", path)?;
    let value = match variant {
        Variant::Naive => {
            HybridSignalValue::Naive(parse_element(&fields, "value", params.modulus(), path)?)
        }
        Variant::Optimal => HybridSignalValue::Optimal(
            (1..=params.signal_capacity())
                .map(|i| parse_element(&fields, &format!("mask.{i}"), params.modulus(), path))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok(HybridTimeSignal::new(time, value))
}

fn hex(v: u64) -> String {
    format!("{v:x}")
}

fn write_record(
    path: &Path,
    kind: &str,
    fields: &[(String, String)],
    secret: bool,
) -> Result<()> {
    let mut text = format!("trss {kind} v1\n");
    for (key, value) in fields {
        text.push_str(&format!("{key} = {value}\n"));
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))?;
    set_mode(path, secret)?;
    Ok(())
}

#[cfg(unix)]
fn set_mode(path: &Path, secret: bool) -> Result<()> {
    use std::os::unix::fs::PermissionsExt;
    let mode = if secret { 0o600 } else { 0o644 };
    fs::set_permissions(path, fs::Permissions::from_mode(mode)).map_err(|e| Error::io(path, e))
}

#[cfg(not(unix))]
fn set_mode(_path: &Path, _secret: bool) -> Result<()> {
    Ok(())
}

fn read_record(path: &Path, kind: &str) -> Result<Vec<(String, String)>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::parse(path, "empty file"))?;
    let expected = format!("trss {kind} v1");
    if header != expected {
        return Err(Error::parse(
            path,
            format!("bad header {header:?}, expected {expected:?}"),
        ));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::parse(path, format!("malformed record line: {line:?}"))
            })?;
            Ok((key.trim().to_string(), value.trim().to_string()))
        })
        .collect()
}

fn lookup<'a>(fields: &'a [(String, String)], key: &str, path: &Path) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::parse(path, format!("missing field: {key}")))
}

fn parse_hex(fields: &[(String, String)], key: &str, path: &Path) -> Result<u64> {
    let text = lookup(fields, key, path)?;
    u64::from_str_radix(text, 16)
        .map_err(|_| Error::parse(path, format!("field {key} is not hex: {text:?}")))
}

fn parse_element(
    fields: &[(String, String)],
    key: &str,
    modulus: FieldModulus,
    path: &Path,
) -> Result<FieldElement> {
    let raw = parse_hex(fields, key, path)?;
    if raw >= modulus.order() {
        return Err(Error::parse(
            path,
            format!("field {key} = {raw:#x} is not below the modulus {}", modulus.order()),
        ));
    }
    Ok(modulus.element(raw))
}

fn check_range(value: u64, lo: u64, hi: u64, what: &str, path: &Path) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::parse(
            path,
            format!("{what} {value} outside {lo}..={hi}"),
        ));
    }
    Ok(())
}
