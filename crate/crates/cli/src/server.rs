use std::io::{self, BufRead, Write};
use std::sync::Arc;
use std::thread;

use braidbox::engine::Engine;
use braidbox::protocol::{handle_line, route_http};
use tiny_http::{Header, Response, Server};

/// Answers one JSON request per input line until end of input.
pub fn serve_lines(input: impl BufRead, out: &mut dyn Write) -> io::Result<()> {
    let engine = Engine::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        writeln!(out, "{}", handle_line(&engine, &line))?;
        out.flush()?;
    }
    Ok(())
}

/// Serves the HTTP endpoints until the server is dropped. Requests are
/// handled on a thread each; the engine serialises commands per session.
pub fn serve_http(server: Server) {
    let engine = Arc::new(Engine::new());
    for mut request in server.incoming_requests() {
        let engine = Arc::clone(&engine);
        thread::spawn(move || {
            let mut body = String::new();
            let (status, reply) = match request.as_reader().read_to_string(&mut body) {
                Ok(_) => route_http(
                    &engine,
                    request.method().as_str(),
                    request.url(),
                    &body,
                ),
                Err(_) => (400, r#"{"v":1,"ok":false,"err":"BadRequest"}"#.to_string()),
            };
            let header = Header::from_bytes("Content-Type", "application/json")
                .expect("static header");
            let response = Response::from_string(reply)
                .with_status_code(status)
                .with_header(header);
            let _ = request.respond(response);
        });
    }
}
