//! Text form of interval sets: `[lo,hi]`, `pt(x)`, `tail(c,+|-,n0)`
//! joined by `u`, or `empty`.

use std::str::FromStr;

use super::num::Num;
use super::set::{Dir, IntervalSet, Piece, Segment, Tail};
use crate::error::{Error, Result};

fn unit_num(s: &str) -> Result<Num> {
    let x: Num = s.parse()?;
    if x < Num::zero() || x > Num::one() {
        return Err(Error::input(format!("coordinate {x} lies outside [0,1]")));
    }
    Ok(x)
}

fn args<'a>(piece: &'a str, open: &str) -> Option<Vec<&'a str>> {
    let inner = piece.strip_prefix(open)?.strip_suffix(')')?;
    Some(inner.split(',').map(str::trim).collect())
}

fn parse_piece(p: &str) -> Result<Piece> {
    let bad = || Error::input(format!("bad interval piece `{p}`"));
    if let Some(inner) = p.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
        let (lo, hi) = (unit_num(lo)?, unit_num(hi)?);
        if lo > hi {
            return Err(Error::input(format!("segment `{p}` has lo > hi")));
        }
        return Ok(Piece::Seg(Segment::new(lo, hi)));
    }
    if let Some(a) = args(p, "pt(") {
        let [x] = a.as_slice() else { return Err(bad()) };
        return Ok(Piece::Seg(Segment::point(unit_num(x)?)));
    }
    if let Some(a) = args(p, "tail(") {
        let [c, d, n] = a.as_slice() else {
            return Err(bad());
        };
        let dir = match *d {
            "+" => Dir::Up,
            "-" => Dir::Down,
            _ => return Err(bad()),
        };
        let n0: u32 = n.parse().map_err(|_| bad())?;
        return Ok(Piece::Tail(Tail::new(unit_num(c)?, dir, n0)));
    }
    Err(bad())
}

impl FromStr for IntervalSet {
    type Err = Error;

    /// Tail points beyond [0,1] are dropped, so `tail(1/4,+,0)` and
    /// `tail(1/4,+,1)` denote the same set.
    fn from_str(s: &str) -> Result<IntervalSet> {
        let s = s.trim();
        if s == "empty" {
            return Ok(IntervalSet::empty());
        }
        // no other token contains the letter `u`
        let pieces = s
            .split('u')
            .map(|p| parse_piece(p.trim()))
            .collect::<Result<_>>()?;
        Ok(IntervalSet::from_pieces(pieces))
    }
}

impl<'de> serde::Deserialize<'de> for IntervalSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
