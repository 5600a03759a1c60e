//! Raw access records and their text formats.
//!
//! One record is one observed packet. Two input encodings are accepted:
//! NDJSON objects and headerless CSV lines, both carrying the same
//! fields: `ts,proto,src,sport,dst,dport,plen[,isn]`.

use std::net::Ipv4Addr;

use serde::Deserialize;

/// Transport protocol of a record. Only TCP and UDP are analyzed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Protocol {
    Tcp,
    Udp,
}

impl Protocol {
    pub fn as_str(&self) -> &'static str {
        match self {
            Protocol::Tcp => "tcp",
            Protocol::Udp => "udp",
        }
    }
}

impl std::fmt::Display for Protocol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Protocol {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tcp" => Ok(Protocol::Tcp),
            "udp" => Ok(Protocol::Udp),
            other => Err(ParseError::UnsupportedProtocol(other.to_string())),
        }
    }
}

/// Input encoding of a record stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordFormat {
    Ndjson,
    Csv,
}

impl std::str::FromStr for RecordFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ndjson" => Ok(RecordFormat::Ndjson),
            "csv" => Ok(RecordFormat::Csv),
            other => Err(format!("unknown record format `{other}` (expected ndjson or csv)")),
        }
    }
}

/// One observed packet: timestamp, addresses, ports, payload length and,
/// for TCP SYNs, the initial sequence number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessRecord {
    /// Seconds since the Unix epoch, UTC.
    pub ts: i64,
    pub protocol: Protocol,
    pub src_ip: Ipv4Addr,
    pub src_port: u16,
    pub dst_ip: Ipv4Addr,
    pub dst_port: u16,
    /// Payload length in bytes.
    pub payload_len: u32,
    /// TCP initial sequence number; never present on UDP records.
    pub tcp_isn: Option<u32>,
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("malformed record: {0}")]
    MalformedRecord(String),
    #[error("field out of range: {0}")]
    FieldOutOfRange(String),
    #[error("unsupported protocol: {0}")]
    UnsupportedProtocol(String),
}

/// NDJSON wire shape before validation.
#[derive(Deserialize)]
struct RawRecord {
    ts: i64,
    proto: String,
    src: String,
    sport: i64,
    dst: String,
    dport: i64,
    plen: i64,
    #[serde(default)]
    isn: Option<i64>,
}

/// Parse one line in the given format into a validated record.
pub fn parse_record(line: &str, format: RecordFormat) -> Result<AccessRecord, ParseError> {
    let raw = match format {
        RecordFormat::Ndjson => serde_json::from_str::<RawRecord>(line)
            .map_err(|e| ParseError::MalformedRecord(e.to_string()))?,
        RecordFormat::Csv => parse_csv_fields(line)?,
    };
    validate(raw)
}

fn parse_csv_fields(line: &str) -> Result<RawRecord, ParseError> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 7 && fields.len() != 8 {
        return Err(ParseError::MalformedRecord(format!(
            "expected 7 or 8 comma-separated fields, got {}",
            fields.len()
        )));
    }
    let int = |name: &str, v: &str| -> Result<i64, ParseError> {
        v.parse::<i64>()
            .map_err(|_| ParseError::MalformedRecord(format!("bad integer in field `{name}`: `{v}`")))
    };
    Ok(RawRecord {
        ts: int("ts", fields[0])?,
        proto: fields[1].to_string(),
        src: fields[2].to_string(),
        sport: int("sport", fields[3])?,
        dst: fields[4].to_string(),
        dport: int("dport", fields[5])?,
        plen: int("plen", fields[6])?,
        isn: match fields.get(7) {
            Some(v) if !v.is_empty() => Some(int("isn", v)?),
            _ => None,
        },
    })
}

fn validate(raw: RawRecord) -> Result<AccessRecord, ParseError> {
    let protocol: Protocol = raw.proto.parse()?;
    let port = |name: &str, v: i64| -> Result<u16, ParseError> {
        u16::try_from(v).map_err(|_| ParseError::FieldOutOfRange(format!("{name} {v} not in 0-65535")))
    };
    let ip = |name: &str, v: &str| -> Result<Ipv4Addr, ParseError> {
        v.parse::<Ipv4Addr>()
            .map_err(|_| ParseError::FieldOutOfRange(format!("bad IPv4 address in `{name}`: `{v}`")))
    };
    let payload_len = u32::try_from(raw.plen)
        .map_err(|_| ParseError::FieldOutOfRange(format!("plen {} not in 0-{}", raw.plen, u32::MAX)))?;
    let tcp_isn = match raw.isn {
        None => None,
        Some(v) => {
            if protocol == Protocol::Udp {
                return Err(ParseError::MalformedRecord("isn present on udp record".to_string()));
            }
            Some(
                u32::try_from(v)
                    .map_err(|_| ParseError::FieldOutOfRange(format!("isn {v} not a 32-bit value")))?,
            )
        }
    };
    Ok(AccessRecord {
        ts: raw.ts,
        protocol,
        src_ip: ip("src", &raw.src)?,
        src_port: port("sport", raw.sport)?,
        dst_ip: ip("dst", &raw.dst)?,
        dst_port: port("dport", raw.dport)?,
        payload_len,
        tcp_isn,
    })
}

impl AccessRecord {
    /// Render in the NDJSON wire format. `isn` is omitted when absent.
    pub fn to_ndjson(&self) -> String {
        match self.tcp_isn {
            Some(isn) => format!(
                r#"{{"ts":{},"proto":"{}","src":"{}","sport":{},"dst":"{}","dport":{},"plen":{},"isn":{}}}"#,
                self.ts, self.protocol, self.src_ip, self.src_port, self.dst_ip, self.dst_port,
                self.payload_len, isn
            ),
            None => format!(
                r#"{{"ts":{},"proto":"{}","src":"{}","sport":{},"dst":"{}","dport":{},"plen":{}}}"#,
                self.ts, self.protocol, self.src_ip, self.src_port, self.dst_ip, self.dst_port,
                self.payload_len
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ndjson_udp_record() {
        let line = r#"{"ts":1596240000,"proto":"udp","src":"198.51.100.7","sport":51234,"dst":"192.0.2.9","dport":58246,"plen":128}"#;
        let rec = parse_record(line, RecordFormat::Ndjson).unwrap();
        assert_eq!(rec.protocol, Protocol::Udp);
        assert_eq!(rec.dst_port, 58246);
        assert_eq!(rec.payload_len, 128);
        assert_eq!(rec.tcp_isn, None);
    }

    #[test]
    fn ndjson_rejects_icmp() {
        let line = r#"{"ts":1596240000,"proto":"icmp","src":"198.51.100.7","sport":0,"dst":"192.0.2.9","dport":0,"plen":64}"#;
        match parse_record(line, RecordFormat::Ndjson) {
            Err(ParseError::UnsupportedProtocol(p)) => assert_eq!(p, "icmp"),
            other => panic!("expected UnsupportedProtocol, got {other:?}"),
        }
    }

    #[test]
    fn csv_tcp_record_with_isn() {
        let line = "1596240000,tcp,198.51.100.7,44321,192.0.2.9,9530,0,3221226219";
        let rec = parse_record(line, RecordFormat::Csv).unwrap();
        assert_eq!(rec.protocol, Protocol::Tcp);
        assert_eq!(rec.dst_port, 9530);
        assert_eq!(rec.tcp_isn, Some(3221226219));
    }

    #[test]
    fn csv_without_isn() {
        let rec = parse_record("1596240000,udp,1.2.3.4,1000,5.6.7.8,53,12", RecordFormat::Csv).unwrap();
        assert_eq!(rec.tcp_isn, None);
        assert_eq!(rec.payload_len, 12);
    }

    #[test]
    fn port_out_of_range() {
        let line = r#"{"ts":0,"proto":"tcp","src":"1.2.3.4","sport":1,"dst":"5.6.7.8","dport":70000,"plen":0}"#;
        assert!(matches!(
            parse_record(line, RecordFormat::Ndjson),
            Err(ParseError::FieldOutOfRange(_))
        ));
    }

    #[test]
    fn bad_ip_is_out_of_range() {
        let line = r#"{"ts":0,"proto":"tcp","src":"300.2.3.4","sport":1,"dst":"5.6.7.8","dport":80,"plen":0}"#;
        assert!(matches!(
            parse_record(line, RecordFormat::Ndjson),
            Err(ParseError::FieldOutOfRange(_))
        ));
    }

    #[test]
    fn isn_on_udp_is_malformed() {
        let line = r#"{"ts":0,"proto":"udp","src":"1.2.3.4","sport":1,"dst":"5.6.7.8","dport":53,"plen":0,"isn":5}"#;
        assert!(matches!(
            parse_record(line, RecordFormat::Ndjson),
            Err(ParseError::MalformedRecord(_))
        ));
    }

    #[test]
    fn garbage_lines_are_malformed() {
        for line in ["", "{", "not json at all", "1,2,3"] {
            assert!(matches!(
                parse_record(line, RecordFormat::Ndjson),
                Err(ParseError::MalformedRecord(_))
            ));
            assert!(parse_record(line, RecordFormat::Csv).is_err());
        }
    }

    #[test]
    fn ndjson_roundtrip() {
        let line = r#"{"ts":1596240000,"proto":"tcp","src":"198.51.100.7","sport":44321,"dst":"192.0.2.9","dport":9530,"plen":0,"isn":3221226219}"#;
        let rec = parse_record(line, RecordFormat::Ndjson).unwrap();
        let again = parse_record(&rec.to_ndjson(), RecordFormat::Ndjson).unwrap();
        assert_eq!(rec, again);
    }
}
