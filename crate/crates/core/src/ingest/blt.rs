// Copyright 2026 The rcv-truncation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! BLT ballot files.
//!
//! ```text
//! 4 1            candidates, seats
//! 57 1 2 0       weight, candidate indices (1-based), 0
//! ...
//! 0              end of ballots
//! "A"            one name per candidate
//! ...
//! "Title"
//! ```
//!
//! The seat count is kept as metadata only.

use std::fmt::Write;

use super::{check_writable, IngestError};
use crate::profile::{CandidateId, NormalizedBallot, PreferenceProfile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedBlt {
    pub profile: PreferenceProfile,
    pub seats: u32,
    pub title: Option<String>,
}

pub fn parse_blt(bytes: &[u8]) -> Result<ParsedBlt, IngestError> {
    let text = std::str::from_utf8(bytes).map_err(|_| IngestError::Encoding)?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i as u64 + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(IngestError::BltHeader { line: 1 })?;
    let (candidates, seats) = match header.split_whitespace().collect::<Vec<_>>()[..] {
        [n, s] => match (n.parse::<usize>(), s.parse::<u32>()) {
            (Ok(n), Ok(s)) if n > 0 => (n, s),
            _ => return Err(IngestError::BltHeader { line: header_line }),
        },
        _ => return Err(IngestError::BltHeader { line: header_line }),
    };

    let mut ballots = Vec::new();
    let mut last_line = header_line;
    loop {
        let Some((line, content)) = lines.next() else {
            return Err(IngestError::BltMissingTerminator { line: last_line });
        };
        last_line = line;
        if content == "0" {
            break;
        }
        ballots.push(parse_ballot_line(line, content, candidates)?);
    }

    let mut roster = Vec::with_capacity(candidates);
    for found in 0..candidates {
        let (_, content) = lines.next().ok_or(IngestError::BltTruncated {
            expected: candidates,
            found,
        })?;
        roster.push(unquote(content).to_owned());
    }
    let title = lines.next().map(|(_, t)| unquote(t).to_owned());

    let profile =
        PreferenceProfile::new(roster, ballots).map_err(|source| IngestError::Profile {
            line: last_line,
            source,
        })?;
    Ok(ParsedBlt {
        profile,
        seats,
        title,
    })
}

fn parse_ballot_line(
    line: u64,
    content: &str,
    candidates: usize,
) -> Result<(NormalizedBallot, u64), IngestError> {
    let mut tokens = content.split_whitespace();
    let weight_token = tokens.next().expect("line is non-empty");
    let weight = weight_token
        .parse::<u64>()
        .ok()
        .filter(|&w| w > 0)
        .ok_or_else(|| IngestError::BadCount {
            line,
            value: weight_token.to_owned(),
        })?;
    let mut ranking: Vec<CandidateId> = Vec::new();
    let mut terminated = false;
    for token in tokens {
        if terminated {
            return Err(IngestError::BltToken {
                line,
                token: token.to_owned(),
            });
        }
        let index = token.parse::<usize>().map_err(|_| IngestError::BltToken {
            line,
            token: token.to_owned(),
        })?;
        if index == 0 {
            terminated = true;
            continue;
        }
        if index > candidates {
            return Err(IngestError::BltIndex {
                line,
                index,
                candidates,
            });
        }
        let id = CandidateId::new(index - 1);
        if !ranking.contains(&id) {
            ranking.push(id);
        }
    }
    if !terminated {
        return Err(IngestError::BltMissingTerminator { line });
    }
    Ok((
        NormalizedBallot::new(ranking).expect("repeats skipped"),
        weight,
    ))
}

fn unquote(s: &str) -> &str {
    s.strip_prefix('"')
        .and_then(|t| t.strip_suffix('"'))
        .unwrap_or(s)
}

pub fn write_blt(
    profile: &PreferenceProfile,
    seats: u32,
    title: &str,
) -> Result<String, IngestError> {
    for name in profile.roster() {
        check_writable(name, &['"', '\n'])?;
    }
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", profile.candidates(), seats);
    for class in profile.classes() {
        let _ = write!(out, "{}", class.count);
        for c in class.ranking.ranking() {
            let _ = write!(out, " {}", c.index() + 1);
        }
        out.push_str(" 0\n");
    }
    out.push_str("0\n");
    for name in profile.roster() {
        let _ = writeln!(out, "\"{name}\"");
    }
    let _ = writeln!(out, "\"{title}\"");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::fixtures::table1;

    const TABLE1_BLT: &str = "4 1\n57 1 2 0\n26 1 4 0\n51 1 4 3 2 0\n137 2 3 1 0\n2 2 3 4 0\n\
        38 3 1 4 0\n16 3 2 4 0\n53 3 4 1 2 0\n72 4 1 2 0\n15 4 1 3 2 0\n33 4 2 1 3 0\n0\n\
        \"A\"\n\"B\"\n\"C\"\n\"D\"\n\"Four candidates\"\n";

    #[test]
    fn table1_blt() {
        let parsed = parse_blt(TABLE1_BLT.as_bytes()).unwrap();
        assert_eq!(parsed.profile, table1());
        assert_eq!(parsed.seats, 1);
        assert_eq!(parsed.title.as_deref(), Some("Four candidates"));
        let crlf = TABLE1_BLT.replace('\n', "\r\n");
        assert_eq!(parse_blt(crlf.as_bytes()).unwrap(), parsed);
    }

    #[test]
    fn round_trip() {
        let text = write_blt(&table1(), 1, "Four candidates").unwrap();
        assert_eq!(parse_blt(text.as_bytes()).unwrap().profile, table1());
    }

    #[test]
    fn duplicate_index_dropped() {
        let parsed = parse_blt(b"3 1\n5 2 2 3 0\n0\n\"A\"\n\"B\"\n\"C\"\n\"t\"\n").unwrap();
        let class = &parsed.profile.classes()[0];
        assert_eq!(
            class.ranking,
            NormalizedBallot::from_indices(&[1, 2]).unwrap()
        );
        assert_eq!(class.count, 5);
    }

    #[test]
    fn multi_seat_header_is_metadata() {
        let parsed = parse_blt(b"2 3\n4 1 0\n0\nA\nB\n").unwrap();
        assert_eq!(parsed.seats, 3);
        assert_eq!(parsed.title, None);
        assert_eq!(parsed.profile.roster(), ["A", "B"]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_blt(b"3 1\n1 4 0\n0\n\"A\"\n\"B\"\n\"C\"\n"),
            Err(IngestError::BltIndex {
                line: 2,
                index: 4,
                candidates: 3
            })
        );
        assert_eq!(
            parse_blt(b"3 1\n1 1 2\n0\n\"A\"\n\"B\"\n\"C\"\n"),
            Err(IngestError::BltMissingTerminator { line: 2 })
        );
        assert_eq!(
            parse_blt(b"3 1\n1 1 2 0\n"),
            Err(IngestError::BltMissingTerminator { line: 2 })
        );
        assert_eq!(
            parse_blt(b"3 1\n1 1 2 0\n0\n\"A\"\n"),
            Err(IngestError::BltTruncated {
                expected: 3,
                found: 1
            })
        );
        assert_eq!(
            parse_blt(b"three 1\n"),
            Err(IngestError::BltHeader { line: 1 })
        );
        assert_eq!(parse_blt(b""), Err(IngestError::BltHeader { line: 1 }));
        assert_eq!(
            parse_blt(b"2 1\n1 1 0 2\n0\nA\nB\n"),
            Err(IngestError::BltToken {
                line: 2,
                token: "2".into()
            })
        );
        assert_eq!(
            parse_blt(b"2 1\n1 1=2 0\n0\nA\nB\n"),
            Err(IngestError::BltToken {
                line: 2,
                token: "1=2".into()
            })
        );
        assert_eq!(
            parse_blt(b"2 1\n0 1 0\n0\nA\nB\n"),
            Err(IngestError::BadCount {
                line: 2,
                value: "0".into()
            })
        );
    }
}
