//! Symbolic expressions over single-character atoms.
//!
//! Grammar: `expr := atom | '(' expr* ')'` with atoms drawn from
//! `a..z`, `0` and `1`. The canonical text has no whitespace. On the bit
//! level each character takes 8 bits (its ASCII code, most significant bit
//! first), and a list is self-delimiting by parenthesis balance.
//!
//! Lists are persistent cons chains behind `Arc`, so `h`, `t` and `c` in the
//! evaluator are O(1) and values can be shared freely between threads.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bitio::BitString;

pub const ALPHABET: &[u8] = b"abcdefghijklmnopqrstuvwxyz01";

/// Characters that may occur in canonical text: parentheses then the atoms.
pub const CHARSET: &[u8] = b"()abcdefghijklmnopqrstuvwxyz01";

pub fn is_atom_char(c: u8) -> bool {
    c.is_ascii_lowercase() || c == b'0' || c == b'1'
}

/// Bit position of an atom inside an occurrence mask.
fn atom_index(c: u8) -> u32 {
    match c {
        b'a'..=b'z' => (c - b'a') as u32,
        b'0' => 26,
        _ => 27,
    }
}

pub fn atom_mask(c: u8) -> u32 {
    1 << atom_index(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    IllegalChar(char),
    UnbalancedClose,
    Unclosed,
    TrailingInput,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at index {index}: {kind:?}")]
pub struct ParseError {
    pub index: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("a bare atom is not self-delimiting and cannot be encoded")]
    BareAtom,
    #[error("first character is not '('")]
    NotAList,
    #[error("bits exhausted before the parentheses balanced")]
    Exhausted,
    #[error("byte {byte:#04x} at bit offset {offset} is not in the character set")]
    BadByte { offset: usize, byte: u8 },
}

#[derive(Clone)]
pub enum SExpr {
    Atom(u8),
    List(List),
}

#[derive(Clone, Default)]
pub struct List(Option<Arc<Cell>>);

struct Cell {
    head: SExpr,
    tail: List,
    len: usize,
    mask: u32,
}

impl List {
    pub fn nil() -> List {
        List(None)
    }

    pub fn cons(head: SExpr, tail: List) -> List {
        let len = tail.len() + 1;
        let mask = head.mask() | tail.mask();
        List(Some(Arc::new(Cell {
            head,
            tail,
            len,
            mask,
        })))
    }

    pub fn from_vec(items: Vec<SExpr>) -> List {
        Self::from_vec_onto(items, List::nil())
    }

    /// `items` followed by the elements of `tail`.
    pub fn from_vec_onto(items: Vec<SExpr>, tail: List) -> List {
        items
            .into_iter()
            .rev()
            .fold(tail, |acc, item| List::cons(item, acc))
    }

    pub fn len(&self) -> usize {
        self.0.as_ref().map_or(0, |c| c.len)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    /// Union of the occurrence bits of every atom in the list.
    pub fn mask(&self) -> u32 {
        self.0.as_ref().map_or(0, |c| c.mask)
    }

    pub fn head(&self) -> Option<&SExpr> {
        self.0.as_ref().map(|c| &c.head)
    }

    pub fn tail(&self) -> Option<&List> {
        self.0.as_ref().map(|c| &c.tail)
    }

    pub fn get(&self, i: usize) -> Option<&SExpr> {
        self.iter().nth(i)
    }

    pub fn iter(&self) -> ListIter<'_> {
        ListIter(self)
    }

    pub fn to_vec(&self) -> Vec<SExpr> {
        self.iter().cloned().collect()
    }

    fn ptr_eq(&self, other: &List) -> bool {
        match (&self.0, &other.0) {
            (Some(a), Some(b)) => Arc::ptr_eq(a, b),
            (None, None) => true,
            _ => false,
        }
    }
}

pub struct ListIter<'a>(&'a List);

impl<'a> Iterator for ListIter<'a> {
    type Item = &'a SExpr;
    fn next(&mut self) -> Option<&'a SExpr> {
        let cell = self.0 .0.as_ref()?;
        self.0 = &cell.tail;
        Some(&cell.head)
    }
}

impl Drop for List {
    fn drop(&mut self) {
        // Unlink uniquely owned spine cells one at a time so long lists do
        // not recurse once per element.
        let mut next = self.0.take();
        while let Some(cell) = next {
            match Arc::try_unwrap(cell) {
                Ok(mut cell) => next = cell.tail.0.take(),
                Err(_) => break,
            }
        }
    }
}

impl PartialEq for List {
    fn eq(&self, other: &List) -> bool {
        if self.len() != other.len() || self.mask() != other.mask() {
            return false;
        }
        let (mut a, mut b) = (self, other);
        loop {
            if a.ptr_eq(b) {
                return true;
            }
            match (&a.0, &b.0) {
                (Some(x), Some(y)) => {
                    if x.head != y.head {
                        return false;
                    }
                    a = &x.tail;
                    b = &y.tail;
                }
                _ => return false,
            }
        }
    }
}

impl Eq for List {}

impl SExpr {
    pub fn atom(c: u8) -> Option<SExpr> {
        is_atom_char(c).then_some(SExpr::Atom(c))
    }

    pub fn nil() -> SExpr {
        SExpr::List(List::nil())
    }

    pub fn list(items: Vec<SExpr>) -> SExpr {
        SExpr::List(List::from_vec(items))
    }

    /// Flat list of `0`/`1` atoms.
    pub fn bit_list(bits: &BitString) -> SExpr {
        SExpr::list(
            bits.iter()
                .map(|b| SExpr::Atom(if b { b'1' } else { b'0' }))
                .collect(),
        )
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, SExpr::Atom(_))
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, SExpr::List(l) if l.is_empty())
    }

    pub fn as_atom(&self) -> Option<u8> {
        match self {
            SExpr::Atom(c) => Some(*c),
            SExpr::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&List> {
        match self {
            SExpr::List(l) => Some(l),
            SExpr::Atom(_) => None,
        }
    }

    pub fn mask(&self) -> u32 {
        match self {
            SExpr::Atom(c) => atom_mask(*c),
            SExpr::List(l) => l.mask(),
        }
    }

    /// Number of nodes (atoms and lists) in the tree.
    pub fn subexpr_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            count += 1;
            if let SExpr::List(l) = e {
                stack.extend(l.iter());
            }
        }
        count
    }

    /// Number of atoms in the tree.
    pub fn atom_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                SExpr::Atom(_) => count += 1,
                SExpr::List(l) => stack.extend(l.iter()),
            }
        }
        count
    }

    /// Length of the canonical text.
    pub fn print_len(&self) -> usize {
        let mut n = 0;
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                SExpr::Atom(_) => n += 1,
                SExpr::List(l) => {
                    n += 2;
                    stack.extend(l.iter());
                }
            }
        }
        n
    }
}

impl PartialEq for SExpr {
    fn eq(&self, other: &SExpr) -> bool {
        match (self, other) {
            (SExpr::Atom(a), SExpr::Atom(b)) => a == b,
            (SExpr::List(a), SExpr::List(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for SExpr {}

pub fn parse(text: &str) -> Result<SExpr, ParseError> {
    parse_bytes(text.as_bytes())
}

pub fn parse_bytes(text: &[u8]) -> Result<SExpr, ParseError> {
    let err = |index, kind| Err(ParseError { index, kind });
    let mut stack: Vec<Vec<SExpr>> = Vec::new();
    for (i, &c) in text.iter().enumerate() {
        let done = match c {
            b'(' => {
                stack.push(Vec::new());
                None
            }
            b')' => match stack.pop() {
                None => return err(i, ParseErrorKind::UnbalancedClose),
                Some(items) => Some(SExpr::list(items)),
            },
            c if is_atom_char(c) => Some(SExpr::Atom(c)),
            c => return err(i, ParseErrorKind::IllegalChar(c as char)),
        };
        if let Some(e) = done {
            match stack.last_mut() {
                Some(parent) => parent.push(e),
                None if i + 1 == text.len() => return Ok(e),
                None => return err(i + 1, ParseErrorKind::TrailingInput),
            }
        }
    }
    if stack.is_empty() {
        err(0, ParseErrorKind::Empty)
    } else {
        err(text.len(), ParseErrorKind::Unclosed)
    }
}

/// Canonical text.
pub fn print(e: &SExpr) -> String {
    let mut out = String::with_capacity(16);
    write_canonical(e, &mut out);
    out
}

fn write_canonical(e: &SExpr, out: &mut String) {
    enum Item<'a> {
        Expr(&'a SExpr),
        Close,
    }
    let mut stack = vec![Item::Expr(e)];
    while let Some(item) = stack.pop() {
        match item {
            Item::Close => out.push(')'),
            Item::Expr(SExpr::Atom(c)) => out.push(*c as char),
            Item::Expr(SExpr::List(l)) => {
                out.push('(');
                stack.push(Item::Close);
                let items: Vec<_> = l.iter().collect();
                stack.extend(items.into_iter().rev().map(Item::Expr));
            }
        }
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl fmt::Debug for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl Serialize for SExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

pub fn push_char_bits(c: u8, out: &mut Vec<bool>) {
    for i in (0..8).rev() {
        out.push((c >> i) & 1 == 1);
    }
}

pub fn text_to_bits(text: &[u8]) -> BitString {
    let mut v = Vec::with_capacity(text.len() * 8);
    for &c in text {
        push_char_bits(c, &mut v);
    }
    BitString::from_bools(v)
}

/// 8 bits per character of the canonical text. Only lists are accepted.
pub fn to_bits(e: &SExpr) -> Result<BitString, CodecError> {
    if e.is_atom() {
        return Err(CodecError::BareAtom);
    }
    Ok(text_to_bits(print(e).as_bytes()))
}

fn byte_at(bits: &[bool], offset: usize) -> u8 {
    bits[offset..offset + 8]
        .iter()
        .fold(0u8, |acc, &b| (acc << 1) | b as u8)
}

/// Decode one list from the front of `b`, stopping as soon as the
/// parentheses balance. Returns the list and the number of bits consumed.
pub fn from_bits_prefix(b: &BitString) -> Result<(SExpr, usize), CodecError> {
    let bits = b.as_slice();
    let mut stack: Vec<Vec<SExpr>> = Vec::new();
    let mut offset = 0;
    loop {
        if offset + 8 > bits.len() {
            return Err(CodecError::Exhausted);
        }
        let byte = byte_at(bits, offset);
        if offset == 0 && byte != b'(' {
            return Err(if CHARSET.contains(&byte) {
                CodecError::NotAList
            } else {
                CodecError::BadByte { offset, byte }
            });
        }
        match byte {
            b'(' => stack.push(Vec::new()),
            b')' => {
                let items = stack.pop().expect("depth is positive inside a list");
                let e = SExpr::list(items);
                match stack.last_mut() {
                    Some(parent) => parent.push(e),
                    None => return Ok((e, offset + 8)),
                }
            }
            c if is_atom_char(c) => stack
                .last_mut()
                .expect("depth is positive inside a list")
                .push(SExpr::Atom(c)),
            byte => return Err(CodecError::BadByte { offset, byte }),
        }
        offset += 8;
    }
}

/// Decode a whole bit string (length a multiple of 8) as canonical text.
pub fn decode_text(b: &BitString) -> Result<Vec<u8>, CodecError> {
    let bits = b.as_slice();
    if !bits.len().is_multiple_of(8) {
        return Err(CodecError::Exhausted);
    }
    (0..bits.len() / 8)
        .map(|i| {
            let byte = byte_at(bits, i * 8);
            if CHARSET.contains(&byte) {
                Ok(byte)
            } else {
                Err(CodecError::BadByte {
                    offset: i * 8,
                    byte,
                })
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitio::bs_parse;

    fn p(s: &str) -> SExpr {
        parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert!(p("()").is_nil());
        assert_eq!(
            p("(ab)"),
            SExpr::list(vec![SExpr::Atom(b'a'), SExpr::Atom(b'b')])
        );
        assert_eq!(parse("(a").unwrap_err().kind, ParseErrorKind::Unclosed);
        assert_eq!(
            parse("a)").unwrap_err(),
            ParseError {
                index: 1,
                kind: ParseErrorKind::TrailingInput
            }
        );
        assert_eq!(
            parse("(a)b").unwrap_err().kind,
            ParseErrorKind::TrailingInput
        );
        assert_eq!(
            parse(")").unwrap_err().kind,
            ParseErrorKind::UnbalancedClose
        );
        assert_eq!(
            parse("(a b)").unwrap_err(),
            ParseError {
                index: 2,
                kind: ParseErrorKind::IllegalChar(' ')
            }
        );
        assert_eq!(parse("(A)").unwrap_err().index, 1);
        assert_eq!(parse("").unwrap_err().kind, ParseErrorKind::Empty);
    }

    #[test]
    fn print_examples() {
        let e = SExpr::list(vec![
            SExpr::Atom(b'a'),
            SExpr::list(vec![SExpr::Atom(b'b')]),
        ]);
        assert_eq!(print(&e), "(a(b))");
        assert_eq!(print(&SExpr::Atom(b'q')), "q");
        assert_eq!(print(&SExpr::nil()), "()");
    }

    #[test]
    fn bit_codec_examples() {
        assert_eq!(to_bits(&p("()")).unwrap().to_string(), "0010100000101001");
        assert_eq!(to_bits(&p("(a)")).unwrap().len(), 24);
        assert_eq!(to_bits(&SExpr::Atom(b'a')), Err(CodecError::BareAtom));

        let mut b = to_bits(&p("()")).unwrap();
        b.extend_from(&bs_parse("101").unwrap());
        assert_eq!(from_bits_prefix(&b).unwrap(), (SExpr::nil(), 16));
        assert_eq!(
            from_bits_prefix(&to_bits(&p("(a)")).unwrap()).unwrap(),
            (p("(a)"), 24)
        );
        assert_eq!(
            from_bits_prefix(&text_to_bits(b"(")),
            Err(CodecError::Exhausted)
        );
        assert_eq!(
            from_bits_prefix(&text_to_bits(b"a")),
            Err(CodecError::NotAList)
        );
        assert_eq!(
            from_bits_prefix(&text_to_bits(b"(A)")),
            Err(CodecError::BadByte {
                offset: 8,
                byte: b'A'
            })
        );
    }

    #[test]
    fn structural_sharing_equality() {
        let tail = List::from_vec(vec![SExpr::Atom(b'b'), SExpr::Atom(b'c')]);
        let a = SExpr::List(List::cons(SExpr::Atom(b'a'), tail.clone()));
        let b = SExpr::List(List::cons(SExpr::Atom(b'a'), tail));
        assert_eq!(a, b);
        assert_eq!(a, p("(abc)"));
        assert_ne!(a, p("(abd)"));
        assert_eq!(a.subexpr_count(), 4);
        assert_eq!(p("(q(ab))").print_len(), 7);
    }

    #[test]
    fn long_list_drops_without_overflow() {
        let mut l = List::nil();
        for _ in 0..1_000_000 {
            l = List::cons(SExpr::Atom(b'z'), l);
        }
        assert_eq!(l.len(), 1_000_000);
        drop(l);
    }

    #[test]
    fn encodings_of_short_lists_are_prefix_free() {
        use crate::bitio::{is_prefix_free, CodeSet};
        let mut set = CodeSet::new();
        let mut texts: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..4 {
            texts = texts
                .iter()
                .flat_map(|t| {
                    CHARSET.iter().map(move |&c| {
                        let mut t = t.clone();
                        t.push(c);
                        t
                    })
                })
                .collect();
            for t in &texts {
                if let Ok(e @ SExpr::List(_)) = parse_bytes(t) {
                    set.insert(to_bits(&e).unwrap());
                }
            }
        }
        // "()", "(x)" for 28 atoms, "(xy)" and "(())" in length 4
        assert_eq!(set.len(), 1 + 28 + 28 * 28 + 1);
        assert!(is_prefix_free(&set).prefix_free);
    }
}
