//! Prints tags, lemmas and dependency labels for the text given as arguments.
//!
//!     cargo run -p storyuml-core --example analyze -- "A customer buys a product."

use storyuml_core::lingpipe::{analyze, DepOptions};
use storyuml_core::Resources;

fn main() {
    let text = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let sentences = match analyze(&text, Resources::bundled(), DepOptions::default()) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    for s in sentences {
        println!("{}", s.text);
        for t in &s.tokens {
            println!("  {:>2} {:<16} {:<6} {:<14} {:?}", t.index, t.text, t.pos.as_str(), t.lemma, t.dep);
        }
        for c in &s.clauses {
            println!("  clause {c:?}");
        }
    }
}
