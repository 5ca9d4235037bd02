//! Fixed prefixes written in the calculus itself.
//!
//! The calculus has no `eval`, so every construction that has to run a
//! program handed to it as bits carries its own interpreter: a decoder for
//! the 8-bit character code and an evaluator that mirrors the host
//! evaluator's rules. Interpreter state is a triple `(R A G)`:
//!
//! * `R`, where program bits come from: atom `r` (host payload), atom `s`
//!   (host aux) or a list of bit atoms;
//! * `A`, what the interpreted program's `s` reads: atom `s` (host aux), a
//!   bit list, or any other atom for "no aux";
//! * `G`, a log of bits taken from `R`, newest first, or atom `n` when
//!   logging is off.
//!
//! On programs that halt on the host the interpreter returns the same value
//! and consumes the same bits. Host faults surface as faults of the
//! interpreting program.

use std::sync::OnceLock;

use num_bigint::BigUint;
use thiserror::Error;

use crate::bitio::BitString;
use crate::sexpr::{SExpr, CHARSET};
use crate::surface::{Compiler, SurfaceError};

const INTERPRETER: &str = r#"
(let
 ((nb (fn (b g) (if (atom g) g (cons b g))))
  (rd (fn (st)
    (let ((src (car st)))
      (if (atom src)
          (let ((b (if (eq src (quote r)) (read) (if (eq src (quote s)) (readaux) (fail)))))
            (list b (list src (cadr st) (nb b (caddr st)))))
          (list (car src) (list (cdr src) (cadr st) (nb (car src) (caddr st))))))))
  (rda (fn (st)
    (let ((a (cadr st)))
      (if (atom a)
          (if (eq a (quote s)) (list (readaux) st) (fail))
          (list (car a) (list (car st) (cdr a) (caddr st)))))))
  (ch (rec ch (tr k st)
    (if k
        (let ((bs (rd st)))
          (ch (if (eq (car bs) (quote 0)) (car tr) (cadr tr)) (cdr k) (cadr bs)))
        (list tr st))))
  (rl (rec rl (st)
    (let ((cs (ch TRIE EIGHT st)))
      (let ((c (car cs)))
        (if (atom c)
            (let ((rs (rl (cadr cs)))) (list (cons c (car rs)) (cadr rs)))
            (if (eq c CLOSE)
                (list nil (cadr cs))
                (if (eq c OPEN)
                    (let ((sub (rl (cadr cs))))
                      (let ((rs (rl (cadr sub))))
                        (list (cons (car sub) (car rs)) (cadr rs))))
                    (fail))))))))
  (rp (fn (st)
    (let ((cs (ch TRIE EIGHT st)))
      (if (eq (car cs) OPEN) (rl (cadr cs)) (fail)))))
  (mem (rec mem (a l) (if l (if (eq a (car l)) (quote 1) (mem a (cdr l))) nil)))
  (param (fn (p) (if (atom p) (if (mem p PRIMS) nil (quote 1)) nil)))
  (one (fn (ar) (if (cdr ar) (fail) (car ar))))
  (two (fn (ar) (if (cdr (cdr ar)) (fail) ar)))
  (three (fn (ar) (if (cdr (cdr (cdr ar))) (fail) ar)))
  (sb (rec sb (m e n v)
    (if m
        (if e (cons (sb nil (car e) n v) (sb m (cdr e) n v)) nil)
        (if (atom e)
            (if (eq e n) v e)
            (if e
                (if (eq (car e) (quote q))
                    e
                    (if (eq (car e) (quote l))
                        (if (cdr e)
                            (if (eq (cadr e) n) e (sb (quote 1) e n v))
                            (sb (quote 1) e n v))
                        (sb (quote 1) e n v)))
                e)))))
  (ev (rec ev (x st)
    (if (atom x)
        (fail)
        (if x
            (let ((hd (car x)))
              (let ((ar (cdr x)))
                (if (atom hd)
                    (if (eq hd (quote q))
                        (list (one ar) st)
                        (if (eq hd (quote i))
                            (let ((a3 (three ar)))
                              (let ((cr (ev (car a3) st)))
                                (if (car cr)
                                    (ev (cadr a3) (cadr cr))
                                    (ev (caddr a3) (cadr cr)))))
                            (if (eq hd (quote l))
                                (if (param (car (two ar))) (list x st) (fail))
                                (if (eq hd (quote r))
                                    (if ar (fail) (rd st))
                                    (if (eq hd (quote s))
                                        (if ar (fail) (rda st))
                                        (if (if (eq hd (quote e)) (quote 1) (eq hd (quote c)))
                                            (let ((a2 (two ar)))
                                              (let ((r1 (ev (car a2) st)))
                                                (let ((r2 (ev (cadr a2) (cadr r1))))
                                                  (list (if (eq hd (quote e))
                                                            (eq (car r1) (car r2))
                                                            (cons (car r1) (car r2)))
                                                        (cadr r2)))))
                                            (let ((r1 (ev (one ar) st)))
                                              (let ((v (car r1)))
                                                (list (if (eq hd (quote h))
                                                          (car v)
                                                          (if (eq hd (quote t))
                                                              (cdr v)
                                                              (if (eq hd (quote a))
                                                                  (atom v)
                                                                  (if (eq hd (quote y))
                                                                      (list (quote y) v)
                                                                      (fail)))))
                                                      (cadr r1))))))))))
                    (let ((fr (ev hd st)))
                      (let ((vr (ev (one ar) (cadr fr))))
                        (let ((f (car fr)))
                          (if (eq (car f) (quote l))
                              (let ((a2 (two (cdr f))))
                                (if (param (car a2))
                                    (ev (sb nil (cadr a2) (car a2) (list (quote q) (car vr))) (cadr vr))
                                    (fail)))
                              (if (eq (car f) (quote y))
                                  (ev (list (list (list (quote q) (one (cdr f))) (list (quote q) f))
                                            (list (quote q) (car vr)))
                                      (cadr vr))
                                  (fail)))))))))
            (list nil st)))))
  (run (fn (st) (let ((ps (rp st))) (ev (car ps) (cadr ps)))))
  (ob (fn (v) (if (atom v) (list v) v)))
  (rev (rec rev (l acc) (if l (rev (cdr l) (cons (car l) acc)) acc)))
  (zero (rec zero (k) (if k (if (eq (car k) (quote 0)) (zero (cdr k)) nil) (quote 1))))
  (dec (rec dec (k) (if (eq (car k) (quote 1)) (cons (quote 0) (cdr k)) (cons (quote 1) (dec (cdr k))))))
  (longer (rec longer (l k) (if (zero k) (if l (quote 1) nil) (if l (longer (cdr l) (dec k)) nil))))
  (loop (rec loop (z) (loop z))))
 MAIN)
"#;

/// Run a self-delimiting program `x*` from the payload while logging its
/// bits, then a program for `y` with aux loaded with `x*`; output the pair.
const COMPOSE_MAIN: &str = r#"
(let ((r1 (run (list (quote r) (quote s) nil))))
  (let ((r2 (run (list (quote r) (rev (caddr (cadr r1)) nil) (quote n)))))
    (list (ob (car r1)) (ob (car r2)))))
"#;

/// Run the program found on the aux channel and return its value.
const REPLAY_MAIN: &str = r#"
(car (run (list (quote s) (quote n) (quote n))))
"#;

/// Search the theorem list for an elegance claim about a program longer
/// than the threshold, then run that program. Loops forever if none.
const BERRY_MAIN: &str = r#"
(let ((find (rec find (l)
              (if l
                  (if (eq (car (car l)) (quote e))
                      (if (longer (cdr (car l)) THRESHOLD) (car l) (find (cdr l)))
                      (find (cdr l)))
                  (loop nil)))))
  (car (run (list (cdr (find ths)) (quote n) (quote n)))))
"#;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("threshold search did not reach a fixed point within {0} rounds")]
    NoFixedPoint(usize),
}

/// Binary trie over 8-bit codes: a node is `(zero-branch one-branch)`,
/// missing branches are `()`, leaves are the atom itself or a marker for
/// the parentheses.
fn trie() -> SExpr {
    fn build(prefix: u8, depth: u32) -> SExpr {
        if depth == 8 {
            return match prefix {
                b'(' => open_marker(),
                b')' => close_marker(),
                c => SExpr::Atom(c),
            };
        }
        let shift = 7 - depth;
        let reachable = |bit: u8| {
            let p = prefix | (bit << shift);
            let mask: u16 = !((1u16 << shift) - 1) & 0xff;
            CHARSET.iter().any(|&c| (c as u16) & mask == p as u16)
        };
        let branch = |bit: u8| {
            if reachable(bit) {
                build(prefix | (bit << shift), depth + 1)
            } else {
                SExpr::nil()
            }
        };
        SExpr::list(vec![branch(0), branch(1)])
    }
    build(0, 0)
}

fn open_marker() -> SExpr {
    SExpr::list(vec![SExpr::nil()])
}

fn close_marker() -> SExpr {
    SExpr::list(vec![open_marker()])
}

fn interpreter_compiler() -> Compiler {
    let eight = SExpr::list(vec![SExpr::Atom(b'1'); 8]);
    Compiler::new()
        .constant("TRIE", trie())
        .constant("EIGHT", eight)
        .constant("OPEN", open_marker())
        .constant("CLOSE", close_marker())
        .constant("PRIMS", crate::sexpr::parse("(qieachtlrsy)").unwrap())
}

fn with_interpreter(main: &str) -> String {
    INTERPRETER.replace("MAIN", main)
}

/// Composing prefix for pair outputs: `C ++ x* ++ p` outputs `(x y)` when
/// `x*` outputs `x` and `p` outputs `y` given `x*` on aux.
pub fn composer() -> &'static SExpr {
    static C: OnceLock<SExpr> = OnceLock::new();
    C.get_or_init(|| {
        interpreter_compiler()
            .compile(&with_interpreter(COMPOSE_MAIN))
            .expect("composer source compiles")
    })
}

/// Replay prefix: with a domain program on aux, outputs what it outputs.
pub fn replay() -> &'static SExpr {
    static R: OnceLock<SExpr> = OnceLock::new();
    R.get_or_init(|| {
        interpreter_compiler()
            .compile(&with_interpreter(REPLAY_MAIN))
            .expect("replay source compiles")
    })
}

/// Little-endian binary numeral as a list of bit atoms; 0 is `()`.
pub fn binary_numeral(n: usize) -> SExpr {
    let bits = BitString::from_natural(&BigUint::from(n));
    SExpr::list(
        bits.iter()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|b| SExpr::Atom(if b { b'1' } else { b'0' }))
            .collect(),
    )
}

/// Berry driver with a given threshold around an enumerator expression.
pub fn berry_program(enumerator: &SExpr, threshold: usize) -> Result<SExpr, ProgramError> {
    let src = format!("((fn (ths) {}) (raw ENUM))", with_interpreter(BERRY_MAIN));
    Ok(interpreter_compiler()
        .constant("ENUM", enumerator.clone())
        .constant("THRESHOLD", binary_numeral(threshold))
        .compile(&src)?)
}

/// Least `T` with `T >= size_bits(P(T))`, found by iterating from 0.
pub fn berry_fixed_point(enumerator: &SExpr) -> Result<(SExpr, usize), ProgramError> {
    const ROUNDS: usize = 64;
    let mut t = 0;
    for _ in 0..ROUNDS {
        let p = berry_program(enumerator, t)?;
        let size = 8 * p.print_len();
        if size <= t {
            return Ok((p, t));
        }
        t = size;
    }
    Err(ProgramError::NoFixedPoint(ROUNDS))
}
