//! A readable front end for the expression calculus.
//!
//! Surface programs use multi-character names and a handful of derived
//! forms; the compiler turns them into single-letter calculus code.
//!
//! ```text
//! (fn (a b) body)            curried lambda
//! (rec f (a b) body)         recursive function via y
//! (let ((a e1) (b e2)) body) sequential binding
//! (if c a b)  (quote d)  (list e ...)  (fail)  (read)  (readaux)  nil
//! cons car cdr cadr caddr eq atom       primitives
//! (raw NAME)                splice a constant as code
//! NAME                      a constant, compiled as (q datum)
//! (f a b)                   curried application
//! ```
//!
//! Substituted values are always quoted and closed, so a binder only has to
//! avoid the letters of variables free in its own body. Letters are
//! allocated per binder on that basis, which lets fifteen letters serve
//! programs with any number of names.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::sexpr::SExpr;

/// Letters that are not primitives and not bits.
const LETTERS: &[u8] = b"xzvuwkjgfdbmnop";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("unbalanced parentheses at byte {0}")]
    Unbalanced(usize),
    #[error("unexpected end of input")]
    Eof,
    #[error("unbound name {0}")]
    Unbound(String),
    #[error("malformed {0} form")]
    Malformed(&'static str),
    #[error("quoted symbol {0} is not a single atom character")]
    BadDatum(String),
    #[error("no free letter for binder {0}")]
    OutOfLetters(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Sym(String),
    List(Vec<Node>),
}

fn read(src: &str) -> Result<Node, SurfaceError> {
    let mut stack: Vec<Vec<Node>> = vec![Vec::new()];
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'(' => stack.push(Vec::new()),
            b')' => {
                let items = stack.pop().ok_or(SurfaceError::Unbalanced(i))?;
                stack
                    .last_mut()
                    .ok_or(SurfaceError::Unbalanced(i))?
                    .push(Node::List(items));
            }
            c if c.is_ascii_whitespace() => {}
            _ => {
                let start = i;
                while i < bytes.len() && !b"(); \t\r\n".contains(&bytes[i]) {
                    i += 1;
                }
                stack
                    .last_mut()
                    .expect("stack never empties before the end")
                    .push(Node::Sym(src[start..i].to_string()));
                continue;
            }
        }
        i += 1;
    }
    if stack.len() != 1 {
        return Err(SurfaceError::Unbalanced(src.len()));
    }
    let mut top = stack.pop().unwrap();
    match top.len() {
        1 => Ok(top.pop().unwrap()),
        0 => Err(SurfaceError::Eof),
        _ => Err(SurfaceError::Malformed("top-level")),
    }
}

fn sym(c: &str) -> SExpr {
    SExpr::Atom(c.as_bytes()[0])
}

fn list(items: Vec<SExpr>) -> SExpr {
    SExpr::list(items)
}

fn datum(n: &Node) -> Result<SExpr, SurfaceError> {
    match n {
        Node::Sym(s) if s.len() == 1 && crate::sexpr::is_atom_char(s.as_bytes()[0]) => Ok(sym(s)),
        Node::Sym(s) => Err(SurfaceError::BadDatum(s.clone())),
        Node::List(items) => Ok(list(items.iter().map(datum).collect::<Result<_, _>>()?)),
    }
}

const BUILTINS: &[&str] = &[
    "cons", "car", "cdr", "cadr", "caddr", "eq", "atom", "list", "read", "readaux", "fail",
];

pub struct Compiler {
    constants: BTreeMap<String, SExpr>,
}

impl Default for Compiler {
    fn default() -> Self {
        Self::new()
    }
}

impl Compiler {
    pub fn new() -> Self {
        Compiler {
            constants: BTreeMap::new(),
        }
    }

    pub fn constant(mut self, name: &str, value: SExpr) -> Self {
        self.constants.insert(name.to_string(), value);
        self
    }

    pub fn compile(&self, src: &str) -> Result<SExpr, SurfaceError> {
        let node = read(src)?;
        self.expr(&node, &BTreeMap::new())
    }

    fn free_vars(&self, n: &Node, bound: &BTreeSet<String>, out: &mut BTreeSet<String>) {
        match n {
            Node::Sym(s) => {
                if !bound.contains(s) && !self.constants.contains_key(s) && s != "nil" {
                    out.insert(s.clone());
                }
            }
            Node::List(items) => {
                let head = match items.first() {
                    Some(Node::Sym(h)) => h.as_str(),
                    _ => "",
                };
                match (head, items.as_slice()) {
                    ("quote", _) | ("raw", _) => {}
                    ("fn", [_, Node::List(params), body]) => {
                        let mut b = bound.clone();
                        b.extend(params.iter().filter_map(sym_name));
                        self.free_vars(body, &b, out);
                    }
                    ("rec", [_, Node::Sym(f), Node::List(params), body]) => {
                        let mut b = bound.clone();
                        b.insert(f.clone());
                        b.extend(params.iter().filter_map(sym_name));
                        self.free_vars(body, &b, out);
                    }
                    ("let", [_, Node::List(binds), body]) => {
                        let mut b = bound.clone();
                        for bind in binds {
                            if let Node::List(pair) = bind {
                                if let [Node::Sym(name), init] = pair.as_slice() {
                                    self.free_vars(init, &b, out);
                                    b.insert(name.clone());
                                }
                            }
                        }
                        self.free_vars(body, &b, out);
                    }
                    _ => {
                        for (i, item) in items.iter().enumerate() {
                            let is_op = i == 0
                                && matches!(item, Node::Sym(s) if (BUILTINS.contains(&s.as_str()) || s == "if")
                                    && !bound.contains(s));
                            if !is_op {
                                self.free_vars(item, bound, out);
                            }
                        }
                    }
                }
            }
        }
    }

    /// Letter for `name` binding over `body`, avoiding letters of the other
    /// variables free there.
    fn pick(
        &self,
        name: &str,
        body: &Node,
        scope: &BTreeMap<String, u8>,
    ) -> Result<u8, SurfaceError> {
        let mut free = BTreeSet::new();
        self.free_vars(body, &BTreeSet::new(), &mut free);
        let taken: BTreeSet<u8> = free
            .iter()
            .filter(|v| v.as_str() != name)
            .filter_map(|v| scope.get(v).copied())
            .collect();
        LETTERS
            .iter()
            .copied()
            .find(|c| !taken.contains(c))
            .ok_or_else(|| SurfaceError::OutOfLetters(name.to_string()))
    }

    fn lambda(
        &self,
        params: &[Node],
        body: &Node,
        scope: &BTreeMap<String, u8>,
    ) -> Result<SExpr, SurfaceError> {
        let Some((first, rest)) = params.split_first() else {
            return self.expr(body, scope);
        };
        let name = sym_name(first).ok_or(SurfaceError::Malformed("fn"))?;
        // the remaining parameters and the body, as the inner lambda sees them
        let inner = Node::List(vec![
            Node::Sym("fn".into()),
            Node::List(rest.to_vec()),
            body.clone(),
        ]);
        let letter = self.pick(&name, &inner, scope)?;
        let mut s = scope.clone();
        s.insert(name, letter);
        let compiled = self.lambda(rest, body, &s)?;
        Ok(list(vec![sym("l"), SExpr::Atom(letter), compiled]))
    }

    fn expr(&self, n: &Node, scope: &BTreeMap<String, u8>) -> Result<SExpr, SurfaceError> {
        let items = match n {
            Node::Sym(s) => {
                if let Some(&c) = scope.get(s) {
                    return Ok(SExpr::Atom(c));
                }
                if s == "nil" {
                    return Ok(SExpr::nil());
                }
                if let Some(v) = self.constants.get(s) {
                    return Ok(list(vec![sym("q"), v.clone()]));
                }
                return Err(SurfaceError::Unbound(s.clone()));
            }
            Node::List(items) => items,
        };
        let Some(head) = items.first() else {
            return Ok(SExpr::nil());
        };
        let args = &items[1..];
        let op = match head {
            Node::Sym(s) if !scope.contains_key(s) => s.as_str(),
            _ => "",
        };
        let prim = |c: &str, arity: usize| -> Result<SExpr, SurfaceError> {
            if args.len() != arity {
                return Err(SurfaceError::Malformed("primitive"));
            }
            let mut v = vec![sym(c)];
            for a in args {
                v.push(self.expr(a, scope)?);
            }
            Ok(list(v))
        };
        match op {
            "quote" => match args {
                [d] => Ok(list(vec![sym("q"), datum(d)?])),
                _ => Err(SurfaceError::Malformed("quote")),
            },
            "raw" => match args {
                [Node::Sym(name)] => self
                    .constants
                    .get(name)
                    .cloned()
                    .ok_or_else(|| SurfaceError::Unbound(name.clone())),
                _ => Err(SurfaceError::Malformed("raw")),
            },
            "fn" => match args {
                [Node::List(params), body] if !params.is_empty() => {
                    self.lambda(params, body, scope)
                }
                _ => Err(SurfaceError::Malformed("fn")),
            },
            "rec" => match args {
                [Node::Sym(f), Node::List(params), body] if !params.is_empty() => {
                    let inner = Node::List(vec![
                        Node::Sym("fn".into()),
                        Node::List(params.clone()),
                        body.clone(),
                    ]);
                    let letter = self.pick(f, &inner, scope)?;
                    let mut s = scope.clone();
                    s.insert(f.clone(), letter);
                    let fun = self.lambda(params, body, &s)?;
                    Ok(list(vec![
                        sym("y"),
                        list(vec![sym("l"), SExpr::Atom(letter), fun]),
                    ]))
                }
                _ => Err(SurfaceError::Malformed("rec")),
            },
            "let" => match args {
                [Node::List(binds), body] => self.let_chain(binds, body, scope),
                _ => Err(SurfaceError::Malformed("let")),
            },
            "if" => prim("i", 3),
            "cons" => prim("c", 2),
            "car" => prim("h", 1),
            "cdr" => prim("t", 1),
            "eq" => prim("e", 2),
            "atom" => prim("a", 1),
            "read" => prim("r", 0),
            "readaux" => prim("s", 0),
            "fail" => match args {
                [] => Ok(list(vec![sym("h"), SExpr::nil()])),
                _ => Err(SurfaceError::Malformed("fail")),
            },
            "cadr" | "caddr" => {
                let [a] = args else {
                    return Err(SurfaceError::Malformed("cadr"));
                };
                let mut e = list(vec![sym("t"), self.expr(a, scope)?]);
                if op == "caddr" {
                    e = list(vec![sym("t"), e]);
                }
                Ok(list(vec![sym("h"), e]))
            }
            "list" => {
                let mut acc = SExpr::nil();
                for a in args.iter().rev() {
                    acc = list(vec![sym("c"), self.expr(a, scope)?, acc]);
                }
                Ok(acc)
            }
            _ => {
                let mut acc = self.expr(head, scope)?;
                if args.is_empty() {
                    return Err(SurfaceError::Malformed("application"));
                }
                for a in args {
                    acc = list(vec![acc, self.expr(a, scope)?]);
                }
                Ok(acc)
            }
        }
    }

    fn let_chain(
        &self,
        binds: &[Node],
        body: &Node,
        scope: &BTreeMap<String, u8>,
    ) -> Result<SExpr, SurfaceError> {
        let Some((first, rest)) = binds.split_first() else {
            return self.expr(body, scope);
        };
        let Node::List(pair) = first else {
            return Err(SurfaceError::Malformed("let"));
        };
        let [Node::Sym(name), init] = pair.as_slice() else {
            return Err(SurfaceError::Malformed("let"));
        };
        let init = self.expr(init, scope)?;
        let remainder = Node::List(vec![
            Node::Sym("let".into()),
            Node::List(rest.to_vec()),
            body.clone(),
        ]);
        let letter = self.pick(name, &remainder, scope)?;
        let mut s = scope.clone();
        s.insert(name.clone(), letter);
        let inner = self.let_chain(rest, body, &s)?;
        Ok(list(vec![
            list(vec![sym("l"), SExpr::Atom(letter), inner]),
            init,
        ]))
    }
}

fn sym_name(n: &Node) -> Option<String> {
    match n {
        Node::Sym(s) => Some(s.clone()),
        Node::List(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitio::BitString;
    use crate::lispvm::{eval, RunOutcome, VMConfig};
    use crate::sexpr::parse;

    fn run(src: &str) -> String {
        let e = Compiler::new().compile(src).unwrap();
        let empty = BitString::new();
        match eval(&e, &VMConfig::new(1_000_000, &empty)) {
            RunOutcome::Halted { value, .. } => value.to_string(),
            other => panic!("{e}: {other:?}"),
        }
    }

    #[test]
    fn compiles_primitives() {
        let c = Compiler::new();
        assert_eq!(
            c.compile("(car (quote (a b)))").unwrap(),
            parse("(h(q(ab)))").unwrap()
        );
        assert_eq!(
            c.compile("(list nil nil)").unwrap(),
            parse("(c()(c()()))").unwrap()
        );
        assert_eq!(c.compile("(fail)").unwrap(), parse("(h())").unwrap());
    }

    #[test]
    fn nested_scopes_get_distinct_letters() {
        assert_eq!(
            run("((fn (a b) (cons a (cons b nil))) (quote p) (quote q))"),
            "(pq)"
        );
        assert_eq!(
            run("(let ((a (quote 1)) (b (quote 0))) (let ((a (quote z))) (list a b)))"),
            "(z0)"
        );
        // an inner binder may reuse a letter when the outer variable is not used inside
        assert_eq!(
            run("(let ((k (fn (a) (fn (b) a)))) ((k (quote m)) (quote n)))"),
            "m"
        );
    }

    #[test]
    fn recursion() {
        let src = "(let ((app (rec app (u v) (if u (cons (car u) (app (cdr u) v)) v))))
                     (app (quote (a b)) (quote (c d))))";
        assert_eq!(run(src), "(abcd)");
    }

    #[test]
    fn many_names_fit_in_fifteen_letters() {
        let params: Vec<String> = (0..16).map(|i| format!("a{i}")).collect();
        let src = format!("(fn ({}) (list {}))", params.join(" "), params.join(" "));
        assert!(matches!(
            Compiler::new().compile(&src),
            Err(SurfaceError::OutOfLetters(_))
        ));
        // but long chains where only neighbours interact are fine
        let mut src = String::from("(let ((v0 (quote 1))");
        for i in 1..40 {
            src.push_str(&format!("(v{i} (cons v{} nil))", i - 1));
        }
        src.push_str(") v39)");
        let out = run(&src);
        assert_eq!(out.len(), 39 * 2 + 1);
    }

    #[test]
    fn constants_and_raw() {
        let c = Compiler::new()
            .constant("TAB", parse("(ab)").unwrap())
            .constant("CODE", parse("(h(q(xy)))").unwrap());
        assert_eq!(
            c.compile("(cdr TAB)").unwrap(),
            parse("(t(q(ab)))").unwrap()
        );
        assert_eq!(
            c.compile("(raw CODE)").unwrap(),
            parse("(h(q(xy)))").unwrap()
        );
    }

    #[test]
    fn errors() {
        let c = Compiler::new();
        assert_eq!(c.compile("(car x)"), Err(SurfaceError::Unbound("x".into())));
        assert!(matches!(
            c.compile("(car"),
            Err(SurfaceError::Unbalanced(_))
        ));
        assert!(matches!(
            c.compile("(quote ab)"),
            Err(SurfaceError::BadDatum(_))
        ));
    }
}
