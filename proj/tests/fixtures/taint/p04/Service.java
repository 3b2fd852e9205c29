package fx.p04;

import javax.servlet.http.HttpServletRequest;
import java.sql.Statement;

public class Service {
    private Statement stmt;

    public void handle(HttpServletRequest req) throws Exception {
        String raw = req.getParameter("q");
        String wrapped = wrap(raw);
        run(wrapped);
    }

    public void handleClean(HttpServletRequest req) throws Exception {
        String raw = req.getParameter("q");
        String clean = escape(raw);
        run(clean);
    }

    String wrap(String s) {
        String t = "(" + s + ")";
        return t;
    }

    String escape(String s) {
        return ESAPI.encoder().encodeForSQL(new MySQLCodec(), s);
    }

    void run(String query) throws Exception {
        stmt.executeQuery(query);
    }

    String input(HttpServletRequest req) {
        return req.getParameter("deep");
    }

    public void indirect(HttpServletRequest req) throws Exception {
        String v = input(req);
        stmt.executeQuery(v);
    }
}
