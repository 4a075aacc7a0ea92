use poset_queues::constructions::{gen_counterexample, gen_general, gen_lazy_lb, gen_mru_lb, lift};
use poset_queues::extensions::random_extension;
use poset_queues::rainbow::queue_assignment;
use poset_queues::ConstructionBundle;
use poset_queues_cli::{export_dot, parse_document, serialize_document, PosetDocument};

fn bundles() -> Vec<ConstructionBundle> {
    let mut out = Vec::new();
    for w in [2, 4] {
        out.push(gen_general(w).unwrap());
    }
    for w in 2..=4 {
        out.push(gen_lazy_lb(w).unwrap());
        out.push(gen_mru_lb(w).unwrap());
    }
    out.push(gen_counterexample(6, 2, false).unwrap());
    out.push(gen_counterexample(16, 11, true).unwrap());
    let base = gen_counterexample(6, 2, false).unwrap();
    out.push(lift(&base.poset, Some(&base.chains)).unwrap());
    out
}

#[test]
fn documents_round_trip() {
    for b in bundles() {
        let doc = PosetDocument::from_bundle(&b);
        let bytes = serialize_document(&doc);
        let again = parse_document(&bytes).unwrap();
        assert_eq!(serialize_document(&again), bytes, "{}", b.family.as_str());
        let (p, chains) = again.to_poset().unwrap();
        assert!(!p.had_redundant_relations());
        assert_eq!(p.len(), b.poset.len());
        // element-wise: same names, same order relation
        for u in 0..p.len() {
            let bu = b.poset.index_of(p.name(u)).unwrap();
            for v in 0..p.len() {
                let bv = b.poset.index_of(p.name(v)).unwrap();
                assert_eq!(p.less(u, v), b.poset.less(bu, bv));
            }
        }
        assert_eq!(chains.unwrap().len(), b.chains.len());
    }
}

#[test]
fn tilde_counterexample_round_trip() {
    let b = gen_counterexample(16, 11, true).unwrap();
    assert_eq!(b.poset.len(), 43);
    let doc = parse_document(&serialize_document(&PosetDocument::from_bundle(&b))).unwrap();
    let (p, _) = doc.to_poset().unwrap();
    let mut original: Vec<(String, String)> = b
        .poset
        .cover_edges()
        .iter()
        .map(|&(u, v)| (b.poset.name(u).to_owned(), b.poset.name(v).to_owned()))
        .collect();
    let mut parsed: Vec<(String, String)> =
        p.cover_edges().iter().map(|&(u, v)| (p.name(u).to_owned(), p.name(v).to_owned())).collect();
    original.sort();
    parsed.sort();
    assert_eq!(original, parsed);
    assert_eq!(p.width(), 3);
}

#[test]
fn serialization_is_idempotent_on_shuffled_input() {
    let text = r#"{
        "metadata": {"note": "x"},
        "chains": [["c", "d"], ["a", "b"]],
        "relations": [["c", "d"], ["a", "d"], ["a", "b"], ["a", "d"]],
        "elements": ["d", "c", "b", "a"],
        "schema_version": "1"
    }"#;
    let once = serialize_document(&parse_document(text.as_bytes()).unwrap());
    let twice = serialize_document(&parse_document(&once).unwrap());
    assert_eq!(once, twice);
    let s = String::from_utf8(once).unwrap();
    assert!(s.find("\"a\"").unwrap() < s.find("\"d\"").unwrap());
}

/// Recursive-descent checker for the Graphviz DOT language (without
/// subgraphs' `subgraph` keyword forms beyond braces, ports or HTML strings).
mod dot_grammar {
    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Id(String),
        Sym(&'static str),
    }

    fn lex(src: &str) -> Result<Vec<Tok>, String> {
        let cs: Vec<char> = src.chars().collect();
        let mut i = 0;
        let mut out = Vec::new();
        while i < cs.len() {
            let c = cs[i];
            if c.is_whitespace() {
                i += 1;
            } else if c == '"' {
                let mut s = String::new();
                i += 1;
                loop {
                    match cs.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('"') => break,
                        Some('\\') => {
                            s.push('\\');
                            s.push(*cs.get(i + 1).ok_or("dangling escape")?);
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Tok::Id(s));
            } else if c == '-' && cs.get(i + 1) == Some(&'>') {
                out.push(Tok::Sym("->"));
                i += 2;
            } else if c == '-' && cs.get(i + 1) == Some(&'-') {
                out.push(Tok::Sym("--"));
                i += 2;
            } else if let Some(s) = ["{", "}", "[", "]", ";", ",", "=", ":"].iter().find(|s| s.starts_with(c)) {
                out.push(Tok::Sym(s));
                i += 1;
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Id(cs[start..i].iter().collect()));
            } else if c.is_ascii_digit() || c == '.' || c == '-' {
                let start = i;
                i += 1;
                while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                    i += 1;
                }
                let num: String = cs[start..i].iter().collect();
                if num == "-" || num.matches('.').count() > 1 {
                    return Err(format!("bad numeral {num}"));
                }
                out.push(Tok::Id(num));
            } else {
                return Err(format!("unexpected character {c:?}"));
            }
        }
        Ok(out)
    }

    struct Parser {
        toks: Vec<Tok>,
        at: usize,
        directed: bool,
    }

    impl Parser {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.at)
        }

        fn eat(&mut self, s: &str) -> bool {
            if self.peek() == Some(&Tok::Sym(match s {
                "{" => "{",
                "}" => "}",
                "[" => "[",
                "]" => "]",
                ";" => ";",
                "," => ",",
                "=" => "=",
                ":" => ":",
                "->" => "->",
                "--" => "--",
                _ => return false,
            })) {
                self.at += 1;
                true
            } else {
                false
            }
        }

        fn expect(&mut self, s: &str) -> Result<(), String> {
            if self.eat(s) {
                Ok(())
            } else {
                Err(format!("expected {s} at token {}, got {:?}", self.at, self.peek()))
            }
        }

        fn keyword(&self, k: &str) -> bool {
            matches!(self.peek(), Some(Tok::Id(s)) if s.eq_ignore_ascii_case(k))
        }

        fn id(&mut self) -> Result<String, String> {
            match self.peek().cloned() {
                Some(Tok::Id(s)) => {
                    self.at += 1;
                    Ok(s)
                }
                t => Err(format!("expected ID at token {}, got {t:?}", self.at)),
            }
        }

        fn graph(&mut self) -> Result<(), String> {
            if self.keyword("strict") {
                self.at += 1;
            }
            if self.keyword("digraph") {
                self.directed = true;
            } else if !self.keyword("graph") {
                return Err("expected graph or digraph".into());
            }
            self.at += 1;
            if matches!(self.peek(), Some(Tok::Id(_))) {
                self.id()?;
            }
            self.expect("{")?;
            self.stmt_list()?;
            self.expect("}")?;
            if self.at != self.toks.len() {
                return Err("trailing tokens".into());
            }
            Ok(())
        }

        fn stmt_list(&mut self) -> Result<(), String> {
            while !matches!(self.peek(), Some(Tok::Sym("}")) | None) {
                self.stmt()?;
                self.eat(";");
            }
            Ok(())
        }

        fn attr_list(&mut self) -> Result<(), String> {
            while self.eat("[") {
                while !self.eat("]") {
                    self.id()?;
                    self.expect("=")?;
                    self.id()?;
                    if !self.eat(",") {
                        self.eat(";");
                    }
                }
            }
            Ok(())
        }

        fn node_id(&mut self) -> Result<(), String> {
            self.id()?;
            if self.eat(":") {
                self.id()?;
                if self.eat(":") {
                    self.id()?;
                }
            }
            Ok(())
        }

        fn subgraph(&mut self) -> Result<(), String> {
            if self.keyword("subgraph") {
                self.at += 1;
                if matches!(self.peek(), Some(Tok::Id(_))) {
                    self.id()?;
                }
            }
            self.expect("{")?;
            self.stmt_list()?;
            self.expect("}")
        }

        fn operand(&mut self) -> Result<(), String> {
            if self.keyword("subgraph") || matches!(self.peek(), Some(Tok::Sym("{"))) {
                self.subgraph()
            } else {
                self.node_id()
            }
        }

        fn stmt(&mut self) -> Result<(), String> {
            if ["graph", "node", "edge"].iter().any(|k| self.keyword(k)) {
                self.at += 1;
                if !matches!(self.peek(), Some(Tok::Sym("["))) {
                    return Err("attribute statement without attributes".into());
                }
                return self.attr_list();
            }
            if matches!(self.toks.get(self.at + 1), Some(Tok::Sym("="))) {
                self.id()?;
                self.expect("=")?;
                self.id()?;
                return Ok(());
            }
            self.operand()?;
            let op = if self.directed { "->" } else { "--" };
            let wrong = if self.directed { "--" } else { "->" };
            if self.peek() == Some(&Tok::Sym(wrong)) {
                return Err(format!("{wrong} in a graph of the other kind"));
            }
            while self.eat(op) {
                self.operand()?;
            }
            self.attr_list()
        }
    }

    pub fn check(src: &str) -> Result<(), String> {
        Parser {
            toks: lex(src)?,
            at: 0,
            directed: false,
        }
        .graph()
    }
}

#[test]
fn grammar_checker_rejects_malformed_input() {
    assert!(dot_grammar::check("digraph { a -> b [x=1]; }").is_ok());
    assert!(dot_grammar::check("digraph{}").is_ok());
    assert!(dot_grammar::check("digraph { a -- b }").is_err());
    assert!(dot_grammar::check("digraph { a -> }").is_err());
    assert!(dot_grammar::check("digraph { \"a }").is_err());
    assert!(dot_grammar::check("digraph { a [x] }").is_err());
    assert!(dot_grammar::check("digraph { a } b").is_err());
}

#[test]
fn dot_output_of_every_family_parses() {
    for (i, b) in bundles().into_iter().enumerate() {
        let plain = export_dot(&b.poset, None);
        dot_grammar::check(&plain).unwrap_or_else(|e| panic!("{}: {e}\n{plain}", b.family.as_str()));
        let ext = b.prescribed_extension.clone().unwrap_or_else(|| random_extension(&b.poset, i as u64));
        let layout = queue_assignment(&ext, b.poset.cover_edges());
        let dot = export_dot(&b.poset, Some(&layout));
        dot_grammar::check(&dot).unwrap_or_else(|e| panic!("{}: {e}\n{dot}", b.family.as_str()));
        assert_eq!(dot.matches("->").count(), b.poset.cover_edges().len());
        assert_eq!(dot.matches("rank=").count(), b.poset.len());
    }
}

#[test]
fn single_edge_dot() {
    let p = poset_queues::Poset::build(&["x", "y"], &[("x", "y")]).unwrap();
    let dot = export_dot(&p, None);
    dot_grammar::check(&dot).unwrap();
    assert_eq!(dot.matches("->").count(), 1);
    assert!(dot.contains("\"x\";") && dot.contains("\"y\";"));
}
