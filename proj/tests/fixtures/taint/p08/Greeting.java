package fx.p08;

import java.io.PrintWriter;
import javax.servlet.http.HttpServletRequest;
import javax.servlet.http.HttpServletResponse;

public class Greeting {
    public void greet(HttpServletRequest req, HttpServletResponse resp) throws Exception {
        String who = req.getParameter("who");
        PrintWriter out = resp.getWriter();
        out.println("<p>Hello " + who + "</p>");
    }

    public void greetEscaped(HttpServletRequest req, HttpServletResponse resp) throws Exception {
        String who = req.getParameter("who");
        who = ESAPI.encoder().encodeForHTML(who);
        resp.getWriter().println("<p>Hello " + who + "</p>");
    }

    public void cookie(HttpServletRequest req, HttpServletResponse resp) throws Exception {
        String theme = req.getHeader("Theme");
        resp.getWriter().write(theme);
    }
}
