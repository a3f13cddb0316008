use std::fmt::Write as _;
use std::sync::Arc;

use super::reader::{Define, Signature, TermReader};
use super::sexp::{read_all, Atom, Sexp, SexpKind};
use super::ParseError;
use crate::term::{quote_symbol, FunSig, Sort, Term};

/// A parsed SMT-LIB problem.
///
/// Declarations are kept by kind; printing emits sorts, then constants,
/// then functions, then assertions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Script {
    pub logic: Option<String>,
    pub sort_decls: Vec<Arc<str>>,
    pub const_decls: Vec<(Arc<str>, Sort)>,
    pub fun_decls: Vec<Arc<FunSig>>,
    pub assertions: Vec<Term>,
    pub has_check_sat: bool,
}

impl Script {
    /// Rebuilds the symbol table the script's terms were read against.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        let here = Sexp { kind: SexpKind::List(Vec::new()), line: 0, column: 0 };
        for s in &self.sort_decls {
            sig.declare_sort(&here, s).expect("script names are unique");
        }
        for (name, sort) in &self.const_decls {
            sig.declare_const(&here, name, sort.clone()).expect("script names are unique");
        }
        for f in &self.fun_decls {
            sig.declare_fun(&here, (**f).clone()).expect("script names are unique");
        }
        sig
    }
}

fn arity_zero(s: &Sexp) -> bool {
    matches!(&s.kind, SexpKind::Atom(Atom::Numeral(n)) if n == &0.into())
}

pub fn parse_script(text: &str) -> Result<Script, ParseError> {
    let mut script = Script::default();
    let mut sig = Signature::default();
    for cmd in read_all(text)? {
        let items = cmd.expect_list("a command")?;
        let (head, args) = items.split_first().ok_or_else(|| cmd.error("empty command"))?;
        let name = head.as_symbol().ok_or_else(|| head.error("expected a command name"))?;
        let want = |n: usize| -> Result<(), ParseError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(cmd.error(format!("`{name}` expects {n} argument(s)")))
            }
        };
        match name {
            "set-logic" => {
                want(1)?;
                script.logic = Some(args[0].expect_name("a logic name")?.to_string());
            }
            "set-info" | "set-option" | "exit" | "get-proof" => {}
            "declare-sort" => {
                want(2)?;
                if !arity_zero(&args[1]) {
                    return Err(args[1].error("only sorts of arity 0 are supported"));
                }
                let sort_name = args[0].expect_name("a sort name")?;
                sig.declare_sort(&args[0], sort_name)?;
                script.sort_decls.push(sort_name.into());
            }
            "declare-const" => {
                want(2)?;
                let c = args[0].expect_name("a constant name")?;
                let sort = sig.read_sort(&args[1])?;
                sig.declare_const(&args[0], c, sort.clone())?;
                script.const_decls.push((c.into(), sort));
            }
            "declare-fun" => {
                want(3)?;
                let f = args[0].expect_name("a function name")?;
                let domain = args[1]
                    .expect_list("a sort list")?
                    .iter()
                    .map(|s| sig.read_sort(s))
                    .collect::<Result<Vec<_>, _>>()?;
                let ret = sig.read_sort(&args[2])?;
                if domain.is_empty() {
                    sig.declare_const(&args[0], f, ret.clone())?;
                    script.const_decls.push((f.into(), ret));
                } else {
                    let decl = sig.declare_fun(&args[0], FunSig { name: f.into(), args: domain, ret })?;
                    script.fun_decls.push(decl);
                }
            }
            "define-fun" => {
                want(4)?;
                let f = args[0].expect_name("a function name")?;
                let params = args[1]
                    .expect_list("a parameter list")?
                    .iter()
                    .map(|p| {
                        let pair = p.expect_list("a `(name sort)` parameter")?;
                        if pair.len() != 2 {
                            return Err(p.error("expected a `(name sort)` parameter"));
                        }
                        Ok((Arc::from(pair[0].expect_name("a parameter name")?), sig.read_sort(&pair[1])?))
                    })
                    .collect::<Result<Vec<_>, ParseError>>()?;
                let ret = sig.read_sort(&args[2])?;
                let body = {
                    let mut reader = TermReader::smtlib(&sig);
                    reader.with_params(&params, |r| r.read_sorted(&args[3], Some(&ret)))?
                };
                sig.define(&args[0], f, Define { params, ret, body })?;
            }
            "assert" => {
                want(1)?;
                let t = TermReader::smtlib(&sig).read_sorted(&args[0], Some(&Sort::Bool))?;
                script.assertions.push(t);
            }
            "check-sat" => {
                want(0)?;
                script.has_check_sat = true;
            }
            other => return Err(head.error(format!("unsupported command `{other}`"))),
        }
    }
    Ok(script)
}

/// Canonical SMT-LIB text for `script`.
pub fn print_script(script: &Script) -> String {
    let mut out = String::new();
    if let Some(logic) = &script.logic {
        writeln!(out, "(set-logic {})", quote_symbol(logic)).unwrap();
    }
    for s in &script.sort_decls {
        writeln!(out, "(declare-sort {} 0)", quote_symbol(s)).unwrap();
    }
    for (c, sort) in &script.const_decls {
        writeln!(out, "(declare-const {} {sort})", quote_symbol(c)).unwrap();
    }
    for f in &script.fun_decls {
        let domain: Vec<String> = f.args.iter().map(Sort::to_string).collect();
        writeln!(out, "(declare-fun {} ({}) {})", quote_symbol(&f.name), domain.join(" "), f.ret).unwrap();
    }
    for a in &script.assertions {
        writeln!(out, "(assert {a})").unwrap();
    }
    if script.has_check_sat {
        out.push_str("(check-sat)\n");
    }
    out
}
